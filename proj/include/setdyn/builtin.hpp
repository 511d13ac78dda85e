#pragma once

#include <setdyn/pl.hpp>
#include <setdyn/rational.hpp>
#include <setdyn/relation.hpp>

namespace setdyn::builtin {

/// Two states: the first may stay or advance, the second always resets.
[[nodiscard]] inline relation_system zero_reset_system() {
  return relation_system::of({{0, 1}, {0}});
}

/// Two states with both fibers full.
[[nodiscard]] inline relation_system two_point_full_system() {
  return relation_system::of({{0, 1}, {0, 1}});
}

/// The single-valued tent map.
[[nodiscard]] inline pl_multimap tent_map() {
  return pl_multimap(
      {graph_piece::segment(rational(2), rational(0), rational(0), rational(1, 2)),
       graph_piece::segment(rational(-2), rational(2), rational(1, 2), rational(1))});
}

/// Tent branch plus a constant zero branch: F(x) = {tent(x), 0}.
[[nodiscard]] inline pl_multimap tent_zero_map() {
  return pl_multimap(
      {graph_piece::segment(rational(2), rational(0), rational(0), rational(1, 2)),
       graph_piece::segment(rational(-2), rational(2), rational(1, 2), rational(1)),
       graph_piece::rectangle(rational(0), rational(1), rational(0), rational(0))});
}

/// Every fiber is the whole interval.
[[nodiscard]] inline pl_multimap full_square_map() {
  return pl_multimap(
      {graph_piece::rectangle(rational(0), rational(1), rational(0), rational(1))});
}

/// Two contracting branches through the origin: F(x) = {x/2, x/3}. This is
/// the coordinate-step map of the inverse limit of x -> {2x, 3x}, whose own
/// graph leaves the unit square.
[[nodiscard]] inline pl_multimap half_third_map() {
  return pl_multimap(
      {graph_piece::segment(rational(1, 2), rational(0), rational(0), rational(1)),
       graph_piece::segment(rational(1, 3), rational(0), rational(0), rational(1))});
}

/// Identity fibers left of 1/2, full fibers at 1/2 and 1, and {0, x, 1}
/// between them.
[[nodiscard]] inline pl_multimap identity_mix_map() {
  return pl_multimap(
      {graph_piece::segment(rational(1), rational(0), rational(0), rational(1)),
       graph_piece::rectangle(rational(1, 2), rational(1, 2), rational(0), rational(1)),
       graph_piece::rectangle(rational(1), rational(1), rational(0), rational(1)),
       graph_piece::rectangle(rational(1, 2), rational(1), rational(0), rational(0)),
       graph_piece::rectangle(rational(1, 2), rational(1), rational(1), rational(1))});
}

}  // namespace setdyn::builtin
