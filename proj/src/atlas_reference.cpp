#include <map>
#include <sstream>

#include "hermpir/atlas.hpp"

namespace hermpir::atlas {

namespace {

// Printed reference rows, whitespace separated, "-" for empty cells.
const std::map<std::pair<int, std::string>, std::string>& reference_rows() {
  static const std::map<std::pair<int, std::string>, std::string> rows{
      {{1, "q=11 g=1"}, "0.33333 0.20000 0.066667 - - - - - - - - - - -"},
      {{1, "q=11 g=2"}, "- - - - - - - - - - - - - -"},
      {{1, "q=13 g=1"}, "0.41177 0.29412 0.26316 0.15789 0.052631 - - - - - - - - -"},
      {{1, "q=13 g=2"}, "0.11111 - - - - - - - - - - - - -"},
      {{1, "q=17 g=1"}, "0.52381 0.42857 0.39130 0.30435 0.21739 0.13043 0.043478 - - - - - - -"},
      {{1, "q=17 g=2"}, "0.27273 0.18182 0.16667 0.083333 0.076923 - - - - - - - - -"},
      {{1, "q=19 g=1"}, "0.56522 0.47826 0.44 0.36 0.28 0.2 0.12 0.04 - - - - - -"},
      {{1, "q=19 g=2"}, "0.33333 0.25 0.23077 0.15385 0.14286 0.071428 0.066667 - - - - - - -"},
      {{1, "q=23 g=1"},
       "0.62963 0.55556 0.51724 0.44828 0.41935 0.35484 0.29032 0.22581 0.16129 0.096774 0.032258 - - -"},
      {{1, "q=23 g=2"}, "0.42857 0.35714 0.33333 0.26667 0.25 0.1875 0.17647 0.11765 0.11111 0.055555 0.052631 - - -"},
      {{1, "q=25 g=1"},
       "0.65517 0.58621 0.54839 0.48387 0.45454 0.39394 0.33333 0.27273 0.21212 0.15152 0.090909 0.030303 - -"},
      {{1, "q=25 g=2"},
       "0.46667 0.4 0.375 0.3125 0.29412 0.23529 0.22222 0.16667 0.15789 0.10526 0.1 0.05 0.047619 -"},
      {{1, "q=27 g=1"},
       "0.67742 0.6129 0.57576 0.51515 0.48571 0.42857 0.37143 0.31429 0.25714 0.2 0.14286 0.085714 0.028571 -"},
      {{1, "q=27 g=2"},
       "0.5 0.4375 0.41176 0.35294 0.33333 0.27778 0.26316 0.21053 0.2 0.15 0.14286 0.095238 0.090909 0.045455"},
      {{1, "q=29 g=1"},
       "0.69697 0.63636 0.6 0.54286 0.51351 0.45946 0.40541 0.35135 0.2973 0.24324 0.18919 0.13514 0.081081 "
       "0.027027"},
      {{1, "q=29 g=2"},
       "0.5 0.47059 0.41176 0.38889 0.33333 0.31579 0.26316 0.25 0.2 0.19048 0.14286 0.13636 0.090909 -"},
      {{2, "g=0"},
       "0.93104 0.86667 0.80645 0.75000 0.69697 0.64706 0.60000 0.55556 0.51351 0.47368 0.43590 0.40000 0.36585 "
       "0.33333"},
      {{2, "g=1"},
       "0.95556 0.92193 0.88927 0.85699 0.82346 0.78995 0.75642 0.72291 0.68938 0.65587 0.62234 0.58883 0.55531 "
       "0.52179"},
      {{2, "g=2"},
       "0.94860 0.91494 0.88262 0.85111 0.82096 0.79140 0.76321 0.73263 0.70105 0.66947 0.63789 0.60632 0.57474 "
       "0.54316"},
      {{2, "g=7"},
       "0.91345 0.88060 0.84859 0.81798 0.78798 0.75940 0.73122 0.70448 0.67795 0.65288 0.62786 0.60431 0.58067 "
       "0.55852"},
      {{3, "g=1"},
       "0.86047 0.78947 0.72662 0.65958 0.58865 0.51773 0.44681 0.37589 0.30497 0.23404 0.16312 0.092198 0.021277"},
      {{3, "g=2"},
       "0.81538 0.75000 0.68571 0.63013 0.57333 0.52564 0.47500 0.41975 0.35802 0.29630 0.23457 0.17284 0.11111"},
      {{3, "g=3"},
       "0.77444 0.70803 0.65035 0.59184 0.54248 0.49044 0.44785 0.40120 0.36416 0.32203 0.28962 0.23497 0.18033"},
      {{3, "g=4"},
       "0.73135 0.67142 0.61111 0.56000 0.50649 0.46250 0.41463 0.37647 0.33333 0.30000 0.26087 0.23158 0.19588"},
      {{3, "g=5"},
       "0.70213 0.64138 0.58940 0.53548 0.49068 0.44242 0.40351 0.36000 0.32597 0.28649 0.25655 0.22051 0.19403"},
      {{3, "hermitian"},
       "0.50890 0.49644 0.49061 0.47826 0.47271 0.46046 0.45517 0.44304 0.43800 0.43307 0.42117 0.41648 0.40468"},
  };
  return rows;
}

}  // namespace

std::optional<std::string> reference_value(int which, const std::string& row, int column) {
  const auto it = reference_rows().find({which, row});
  if (it == reference_rows().end() || column < 0) return std::nullopt;
  std::istringstream in(it->second);
  std::string cell;
  for (int c = 0; in >> cell; ++c) {
    if (c == column) return cell;
  }
  return std::nullopt;
}

}  // namespace hermpir::atlas
