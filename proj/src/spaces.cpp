#include "pomfix/spaces.hpp"

namespace pomfix {

std::string to_string(SpaceKind k) {
  switch (k) {
    case SpaceKind::dislocated: return "dislocated";
    case SpaceKind::distance: return "distance";
    case SpaceKind::pseudo: return "pseudo";
  }
  return "?";
}

std::string to_string(FwLevel level) {
  switch (level) {
    case FwLevel::weak: return "weak";
    case FwLevel::standard: return "standard";
    case FwLevel::strong: return "strong";
  }
  return "?";
}

}  // namespace pomfix
