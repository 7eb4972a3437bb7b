#pragma once

#include <cmath>
#include <limits>
#include <vector>

#include "freeplanar/error.hpp"
#include "freeplanar/quad.hpp"

namespace freeplanar {

// Scalar shim so the factor and graph engines run both in double precision
// and exactly over a quadratic field. Quad comparisons are exact; the double
// side absorbs roundoff up to 1e-12.
template <class S>
struct NumTraits;

template <>
struct NumTraits<double> {
  static double from_int(long long n) { return static_cast<double>(n); }
  static bool definitely_positive(double x) { return x > 1e-12; }
  static bool near_zero(double x) { return std::abs(x) <= 1e-12; }
  static bool close(double a, double b, double tol) { return std::abs(a - b) <= tol; }
  static double abs(double x) { return std::abs(x); }
  static double to_double(double x) { return x; }
};

template <>
struct NumTraits<Quad> {
  static Quad from_int(long long n) { return Quad(Rational(n)); }
  static bool definitely_positive(const Quad& x) { return x.sign() > 0; }
  static bool near_zero(const Quad& x) { return x.is_zero(); }
  static bool close(const Quad& a, const Quad& b, double) { return a == b; }
  static Quad abs(const Quad& x) { return x.sign() < 0 ? -x : x; }
  static double to_double(const Quad& x) { return x.to_double(); }
};

// Extended real: a finite scalar or +infinity.
template <class S>
struct Ext {
  S value{};
  bool infinite = false;

  static Ext inf() { return {S{}, true}; }
  static Ext finite(S v) { return {std::move(v), false}; }

  double to_double() const {
    return infinite ? std::numeric_limits<double>::infinity() : NumTraits<S>::to_double(value);
  }
};

template <class S>
Ext<S> ext_add(const Ext<S>& a, const Ext<S>& b) {
  if (a.infinite || b.infinite) return Ext<S>::inf();
  return Ext<S>::finite(a.value + b.value);
}

enum class SummandKind { FreeGroup, MatrixBlock, Diffuse };

// One direct summand of a tracial decomposition. trace is the summand's
// total trace; a MatrixBlock of size n has minimal-projection trace trace/n.
template <class S>
struct Summand {
  SummandKind kind;
  S trace;
  Ext<S> t{};
  int n = 1;
};

template <class S>
struct FactorDecomposition {
  std::vector<Summand<S>> summands;
};

template <class S>
Summand<S> free_group_summand(Ext<S> t, S trace) {
  return {SummandKind::FreeGroup, std::move(trace), std::move(t), 1};
}

template <class S>
Summand<S> atom_summand(S trace) {
  return {SummandKind::MatrixBlock, std::move(trace), {}, 1};
}

template <class S>
Summand<S> matrix_summand(int n, S trace) {
  if (n < 1) fail(ErrorKind::SchemaError, "matrix block size must be positive");
  return {SummandKind::MatrixBlock, std::move(trace), {}, n};
}

template <class S>
Summand<S> diffuse_summand(S trace) {
  return {SummandKind::Diffuse, std::move(trace), {}, 1};
}

template <class S>
void require_normalized(const FactorDecomposition<S>& dec) {
  using T = NumTraits<S>;
  S total = T::from_int(0);
  for (const auto& s : dec.summands) {
    if (!T::definitely_positive(s.trace))
      fail(ErrorKind::NotNormalized, "summand trace must be positive");
    total = total + s.trace;
  }
  if (!T::near_zero(total - T::from_int(1)))
    fail(ErrorKind::NotNormalized, "summand traces must sum to 1");
}

// Free-dimension ledger: 1 + sum gamma^2 (t-1) over free-group summands minus
// sum alpha^2 over matrix blocks; diffuse summands contribute nothing.
template <class S>
Ext<S> fdim(const FactorDecomposition<S>& dec) {
  using T = NumTraits<S>;
  require_normalized(dec);
  const S one = T::from_int(1);
  S acc = one;
  for (const auto& s : dec.summands) {
    switch (s.kind) {
      case SummandKind::FreeGroup:
        if (s.t.infinite) return Ext<S>::inf();
        acc = acc + s.trace * s.trace * (s.t.value - one);
        break;
      case SummandKind::MatrixBlock: {
        S alpha = s.trace / T::from_int(s.n);
        acc = acc - alpha * alpha;
        break;
      }
      case SummandKind::Diffuse:
        break;
    }
  }
  return Ext<S>::finite(acc);
}

template <class S>
Ext<S> amplify(const Ext<S>& t, const S& gamma) {
  using T = NumTraits<S>;
  if (!T::definitely_positive(gamma))
    fail(ErrorKind::WeightInvalid, "amplification by a non-positive trace");
  if (t.infinite) return t;
  const S one = T::from_int(1);
  return Ext<S>::finite(one + (t.value - one) / (gamma * gamma));
}

// Free product of two normalized decompositions in the three supported
// shapes: two atoms vs two atoms (hyperfinite diffuse remainder), purely
// atomic with five or more atoms total, or at least one side carrying a
// diffuse/free-group summand. Atoms survive at pairs with alpha+beta > 1;
// the remainder parameter is fixed by free-dimension additivity.
template <class S>
FactorDecomposition<S> dykema_free_product(const FactorDecomposition<S>& A,
                                           const FactorDecomposition<S>& B) {
  using T = NumTraits<S>;
  require_normalized(A);
  require_normalized(B);
  const S one = T::from_int(1);
  auto classify = [](const FactorDecomposition<S>& X, std::vector<S>& atoms) {
    bool continuous = false;
    for (const auto& s : X.summands) {
      if (s.kind == SummandKind::MatrixBlock) {
        if (s.n != 1)
          fail(ErrorKind::ShapeUnsupported, "matrix blocks are outside the supported shapes");
        atoms.push_back(s.trace);
      } else {
        continuous = true;
      }
    }
    return continuous;
  };
  std::vector<S> atomsA, atomsB;
  bool contA = classify(A, atomsA);
  bool contB = classify(B, atomsB);
  if ((!contA && atomsA.size() < 2) || (!contB && atomsB.size() < 2))
    fail(ErrorKind::ShapeUnsupported, "a purely atomic side needs at least two atoms");
  bool hyperfinite_case = !contA && !contB && atomsA.size() == 2 && atomsB.size() == 2;

  FactorDecomposition<S> out;
  S atom_total = T::from_int(0);
  S atom_sq = T::from_int(0);
  for (const auto& a : atomsA) {
    for (const auto& b : atomsB) {
      S s = a + b - one;
      if (!T::definitely_positive(s)) continue;
      out.summands.push_back(atom_summand(s));
      atom_total = atom_total + s;
      atom_sq = atom_sq + s * s;
    }
  }
  S f = one - atom_total;
  if (!T::definitely_positive(f))
    fail(ErrorKind::ShapeUnsupported, "no continuous mass left after atom extraction");

  if (hyperfinite_case) {
    out.summands.insert(out.summands.begin(), diffuse_summand(f));
    return out;
  }
  Ext<S> target = ext_add(fdim(A), fdim(B));
  Ext<S> t = target.infinite
                 ? Ext<S>::inf()
                 : Ext<S>::finite(one + (target.value - one + atom_sq) / (f * f));
  out.summands.insert(out.summands.begin(), free_group_summand(t, f));
  return out;
}

} // namespace freeplanar
