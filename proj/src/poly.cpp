#include "c2lab/poly.hpp"

namespace c2lab {

template class PolyT<Mono>;
template class PolyT<WideMono>;

}  // namespace c2lab
