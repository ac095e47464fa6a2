#include "groupoid_impl.hpp"

namespace fracta {

template struct Grpd<FinPtdSet>;
template struct Grpd<FinAb>;

}  // namespace fracta
