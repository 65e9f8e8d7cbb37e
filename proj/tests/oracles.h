// Independent reference implementations used to check the library. They
// favour obviousness over speed and share no code with core/.

#ifndef TTSEVAL_TESTS_ORACLES_H_
#define TTSEVAL_TESTS_ORACLES_H_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <random>
#include <regex>
#include <string>
#include <utility>
#include <vector>

namespace oracle {

struct Pair {
  std::size_t ref = 0;
  std::size_t pred = 0;
  double distance = 0.0;
};

// Recursive best match, transcribed step by step: scan every remaining
// (reference, prediction) combination in text order, keep the first
// strict minimum, remove both items, recurse on what is left.
inline void recursive_best_match(
    const std::function<double(std::size_t, std::size_t)>& dist,
    std::vector<std::size_t> refs, std::vector<std::size_t> preds,
    std::vector<Pair>& out) {
  if (refs.empty() || preds.empty()) return;
  std::size_t best_r = 0;
  std::size_t best_p = 0;
  double best = dist(refs[0], preds[0]);
  for (std::size_t i = 0; i < refs.size(); ++i) {
    for (std::size_t j = 0; j < preds.size(); ++j) {
      double d = dist(refs[i], preds[j]);
      if (d < best) {
        best = d;
        best_r = i;
        best_p = j;
      }
    }
  }
  out.push_back({refs[best_r], preds[best_p], best});
  refs.erase(refs.begin() + static_cast<std::ptrdiff_t>(best_r));
  preds.erase(preds.begin() + static_cast<std::ptrdiff_t>(best_p));
  recursive_best_match(dist, std::move(refs), std::move(preds), out);
}

inline std::vector<Pair> best_match(
    std::size_t n_ref, std::size_t n_pred,
    const std::function<double(std::size_t, std::size_t)>& dist) {
  std::vector<std::size_t> refs(n_ref), preds(n_pred);
  for (std::size_t i = 0; i < n_ref; ++i) refs[i] = i;
  for (std::size_t j = 0; j < n_pred; ++j) preds[j] = j;
  std::vector<Pair> out;
  recursive_best_match(dist, refs, preds, out);
  return out;
}

// Textbook full-matrix edit distance over bytes (ASCII inputs only).
inline std::size_t edit_distance(const std::string& a, const std::string& b) {
  std::vector<std::vector<std::size_t>> d(
      a.size() + 1, std::vector<std::size_t>(b.size() + 1));
  for (std::size_t i = 0; i <= a.size(); ++i) d[i][0] = i;
  for (std::size_t j = 0; j <= b.size(); ++j) d[0][j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      std::size_t sub = d[i - 1][j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      d[i][j] = std::min({d[i - 1][j] + 1, d[i][j - 1] + 1, sub});
    }
  }
  return d[a.size()][b.size()];
}

// Every unordered pair, tied reference times skipped, tied predictions 1/2.
// Returns -1 when nothing is comparable.
inline double concordance(const std::vector<double>& t_ref,
                          const std::vector<double>& t_pred) {
  double score = 0.0;
  double comparable = 0.0;
  for (std::size_t i = 0; i < t_ref.size(); ++i) {
    for (std::size_t j = i + 1; j < t_ref.size(); ++j) {
      if (t_ref[i] == t_ref[j]) continue;
      comparable += 1.0;
      double dr = t_ref[i] - t_ref[j];
      double dp = t_pred[i] - t_pred[j];
      if (dp == 0.0) {
        score += 0.5;
      } else if ((dr > 0) == (dp > 0)) {
        score += 1.0;
      }
    }
  }
  return comparable == 0.0 ? -1.0 : score / comparable;
}

// Empirical CDF evaluated by counting, F(x) = #{x_i <= x} / k.
inline double ecdf(const std::vector<double>& x, double at) {
  std::size_t n = 0;
  for (double v : x) n += (v <= at) ? 1 : 0;
  return static_cast<double>(n) / static_cast<double>(x.size());
}

// Riemann sum of the empirical CDF on an adaptively refined grid: a cell
// whose end values agree lies on a flat step (F is monotone) and is summed
// exactly; any other cell is halved until narrower than `resolution`, where
// the trapezoid error is bounded by the cell width.
inline double integrate_ecdf(const std::vector<double>& x, double lo, double hi,
                             double resolution) {
  double fa = ecdf(x, lo);
  double fb = ecdf(x, hi);
  if (fa == fb) return fa * (hi - lo);
  if (hi - lo < resolution) return 0.5 * (fa + fb) * (hi - lo);
  double mid = 0.5 * (lo + hi);
  return integrate_ecdf(x, lo, mid, resolution) +
         integrate_ecdf(x, mid, hi, resolution);
}

// Normalized area under the log-time CDF of raw |discrepancies| in hours.
inline double aultc(const std::vector<double>& abs_hours, double s_max) {
  std::vector<double> x;
  for (double h : abs_hours) x.push_back(std::log1p(std::min(h, s_max)));
  const double upper = std::log1p(s_max);
  return integrate_ecdf(x, 0.0, upper, upper * 1e-14) / upper;
}

// Screens as regular expressions, run through the standard library engine.
inline bool regex_search_ci(const std::string& text,
                            const std::string& pattern) {
  return std::regex_search(
      text, std::regex(pattern, std::regex::ECMAScript | std::regex::icase));
}

inline bool case_report(const std::string& text) {
  return regex_search_ci(text, "case (report|presenta)") &&
         regex_search_ci(text, "year-? ?old");
}

inline bool sepsis(const std::string& text) {
  return regex_search_ci(text, "(sepsi|septic)") &&
         regex_search_ci(text, "(critical|intensive) care");
}

// Quartiles by linear interpolation at (n - 1) p, written out directly.
inline double interpolated_quantile(std::vector<double> v, double p) {
  std::sort(v.begin(), v.end());
  double pos = (static_cast<double>(v.size()) - 1.0) * p;
  std::size_t lo = static_cast<std::size_t>(std::floor(pos));
  std::size_t hi = static_cast<std::size_t>(std::ceil(pos));
  return v[lo] + (pos - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

}  // namespace oracle

#endif  // TTSEVAL_TESTS_ORACLES_H_
