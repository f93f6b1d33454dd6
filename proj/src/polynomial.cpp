#include "vorcell/polynomial.hpp"

namespace vorcell {

template class Polynomial<Rational>;
template class Polynomial<Fp>;

}  // namespace vorcell
