#pragma once

// Hofstadter butterfly bands: for flux q/n the spectrum of the Harper operator
// is {x : P_{n,q}(x) ∈ [-4, 0]}, n closed intervals.
//
// The band edges are the roots of P (periodic boundary, corner +1) and of
// P + 4 (antiperiodic boundary, corner -1).  Both are spectra of symmetric
// matrices, so we take them from the QL solver; sign-change search on P
// cannot separate the exponentially thin gaps that appear for n >~ 20.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <numeric>
#include <string>
#include <vector>

#include "heisenspec/eigensolver.hpp"
#include "heisenspec/errors.hpp"
#include "heisenspec/representations.hpp"

namespace heisenspec {

struct Band {
  int n = 0;
  int q = 0;
  int index = 0;  // 1..n from the bottom
  double lower = 0.0;
  double upper = 0.0;
};

inline constexpr double kEdgeWindow = 4.5;     // every edge must fall in [-4.5, 4.5]
inline constexpr double kDegenerateGap = 1e-9;  // closed gaps: edges this close may pair either way

struct BandEdges {
  std::vector<double> periodic;      // roots of P, ascending
  std::vector<double> antiperiodic;  // roots of P + 4, ascending
};

inline BandEdges band_edges(int n, int q) {
  return {eigenvalues(HarperMatrix(n, q, 1.0)), eigenvalues(HarperMatrix(n, q, -1.0))};
}

inline std::vector<Band> bands(int n, int q) {
  require(n >= 3, "bands need n >= 3, got n = " + std::to_string(n));
  require(q >= 1 && q < n, "q must lie in 1..n-1, got q = " + std::to_string(q));
  require(std::gcd(n, q) == 1,
          "q/n must be in lowest terms, got gcd(" + std::to_string(q) + ", " + std::to_string(n) + ") = " +
              std::to_string(std::gcd(n, q)));

  const BandEdges edges = band_edges(n, q);
  struct Edge {
    double x;
    bool periodic;
  };
  std::vector<Edge> all;
  all.reserve(2 * static_cast<std::size_t>(n));
  for (double x : edges.periodic) all.push_back({x, true});
  for (double x : edges.antiperiodic) all.push_back({x, false});
  std::stable_sort(all.begin(), all.end(), [](const Edge& a, const Edge& b) { return a.x < b.x; });

  const auto tag = [&] { return "(n = " + std::to_string(n) + ", q = " + std::to_string(q) + ")"; };
  for (const Edge& e : all)
    if (!(std::abs(e.x) <= kEdgeWindow))
      throw NumericalError("band edge " + std::to_string(e.x) + " outside [-4.5, 4.5] " + tag());

  std::vector<Band> out;
  out.reserve(static_cast<std::size_t>(n));
  for (std::size_t k = 0; k + 1 < all.size(); k += 2) {
    const Edge& lo = all[k];
    const Edge& hi = all[k + 1];
    // A band runs from a root of P to a root of P + 4.  Two roots of the
    // same kind can only share a band when the gap between them is closed.
    if (lo.periodic == hi.periodic && hi.x - lo.x > kDegenerateGap)
      throw NumericalError("band " + std::to_string(k / 2 + 1) + " has two " +
                           (lo.periodic ? "periodic" : "antiperiodic") + " edges " + std::to_string(lo.x) +
                           ", " + std::to_string(hi.x) + " " + tag());
    out.push_back({n, q, static_cast<int>(k / 2) + 1, lo.x, hi.x});
  }
  return out;
}

// All coprime fluxes q/n with 3 <= n <= max_denominator, ordered by n, q, index.
inline std::vector<Band> butterfly_sweep(int max_denominator) {
  require(max_denominator >= 3, "max_denominator must be >= 3, got " + std::to_string(max_denominator));
  std::vector<Band> out;
  for (int n = 3; n <= max_denominator; ++n)
    for (int q = 1; q < n; ++q) {
      if (std::gcd(n, q) != 1) continue;
      auto b = bands(n, q);
      out.insert(out.end(), b.begin(), b.end());
    }
  return out;
}

namespace detail {

inline std::string fixed(double v, int digits = 3) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

}  // namespace detail

// One vertical segment per band at abscissa q/n; energy axis [-4, 4] upward.
inline std::string render_svg(const std::vector<Band>& bands, int width, int height) {
  require(!bands.empty(), "render_svg needs at least one band");
  require(width > 0 && height > 0,
          "SVG dimensions must be positive, got " + std::to_string(width) + "x" + std::to_string(height));
  const double w = width, h = height;
  const auto px = [&](const Band& b) { return w * b.q / b.n; };
  const auto py = [&](double e) { return h * (4.0 - std::clamp(e, -4.0, 4.0)) / 8.0; };

  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(width) + "\" height=\"" +
         std::to_string(height) + "\" viewBox=\"0 0 " + std::to_string(width) + " " + std::to_string(height) + "\">\n";
  svg += "<rect x=\"0\" y=\"0\" width=\"" + std::to_string(width) + "\" height=\"" + std::to_string(height) +
         "\" fill=\"white\"/>\n";
  svg += "<g stroke=\"black\" stroke-width=\"1\">\n";
  for (const Band& b : bands) {
    const std::string x = detail::fixed(px(b));
    svg += "<line x1=\"" + x + "\" y1=\"" + detail::fixed(py(b.lower)) + "\" x2=\"" + x + "\" y2=\"" +
           detail::fixed(py(b.upper)) + "\"/>\n";
  }
  svg += "</g>\n</svg>\n";
  return svg;
}

}  // namespace heisenspec
