#include "bifractions_impl.hpp"

namespace fracta {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::yes: return "yes";
    case Verdict::no: return "no";
    case Verdict::undecided: return "undecided";
  }
  return "undecided";
}

template struct Fract<FinPtdSet>;
template struct Fract<FinAb>;

}  // namespace fracta
