#include "freeplanar/factor.hpp"

namespace freeplanar {

template struct Ext<double>;
template struct Ext<Quad>;
template struct Summand<double>;
template struct Summand<Quad>;

template void require_normalized(const FactorDecomposition<double>&);
template void require_normalized(const FactorDecomposition<Quad>&);
template Ext<double> fdim(const FactorDecomposition<double>&);
template Ext<Quad> fdim(const FactorDecomposition<Quad>&);
template Ext<double> amplify(const Ext<double>&, const double&);
template Ext<Quad> amplify(const Ext<Quad>&, const Quad&);
template FactorDecomposition<double> dykema_free_product(const FactorDecomposition<double>&,
                                                         const FactorDecomposition<double>&);
template FactorDecomposition<Quad> dykema_free_product(const FactorDecomposition<Quad>&,
                                                       const FactorDecomposition<Quad>&);

} // namespace freeplanar
