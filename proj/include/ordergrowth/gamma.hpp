#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "ordergrowth/quasimorphism.hpp"

namespace og {

struct GammaOptions {
  long long p_cap = 1ll << 20;  // exploration cap on |p|
  // Optional (lo, hi] guess for the answer; wrong guesses are repaired by
  // exponential expansion, so any hint is sound.
  std::optional<std::pair<long long, long long>> hint;
};

// Least p with g^p >= h^n. The predicate p -> leq(h^n, g^p) is upward-closed
// exactly when g >= e, which is checked once up front.
template <class Element>
long long gamma_n(const GroupModel<Element>& model, const Element& g, const Element& h, long long n,
                  const GammaOptions& opts = {}) {
  if (n < 1) throw DomainError("gamma_n: n must be positive");
  if (!model.leq(model.identity, g))
    throw DomainError("gamma_n: g is not >= e, so the power predicate need not be monotone");
  const Element target = model.power(h, n);
  auto pred = [&](long long p) { return model.leq(target, model.power(g, p)); };

  // expand_up: pred(from) is false; find a true point above it (or give up at the cap).
  auto expand_up = [&](long long from) -> std::pair<long long, long long> {
    long long lo = from, step = 1;
    while (true) {
      const long long cand = from + step;
      if (cand > opts.p_cap || cand < from) {
        if (pred(opts.p_cap)) return {lo, opts.p_cap};
        throw BudgetExceeded("gamma_n: no p within the cap satisfies g^p >= h^n");
      }
      if (pred(cand)) return {lo, cand};
      lo = cand;
      step <<= 1;
    }
  };
  // expand_down: pred(from) is true; find a false point below it.
  auto expand_down = [&](long long from) -> std::pair<long long, long long> {
    long long hi = from, step = 1;
    while (true) {
      const long long cand = from - step;
      if (cand < -opts.p_cap || cand > from) {
        if (!pred(-opts.p_cap)) return {-opts.p_cap, hi};
        throw BudgetExceeded("gamma_n: minimum lies at or below the negative cap");
      }
      if (!pred(cand)) return {cand, hi};
      hi = cand;
      step <<= 1;
    }
  };

  long long lo, hi;
  if (opts.hint) {
    long long hl = std::clamp(opts.hint->first, -opts.p_cap, opts.p_cap);
    long long hh = std::clamp(opts.hint->second, -opts.p_cap, opts.p_cap);
    if (hl >= hh) hl = hh - 1;
    if (!pred(hh)) {
      std::tie(lo, hi) = expand_up(hh);
    } else if (pred(hl)) {
      std::tie(lo, hi) = expand_down(hl);
    } else {
      lo = hl;
      hi = hh;
    }
  } else if (pred(0)) {
    std::tie(lo, hi) = expand_down(0);
  } else {
    std::tie(lo, hi) = expand_up(0);
  }

  while (hi - lo > 1) {
    const long long mid = lo + (hi - lo) / 2;
    (pred(mid) ? hi : lo) = mid;
  }
  return hi;
}

struct GrowthRow {
  long long n = 0;
  long long gamma = 0;
  double quotient = 0.0;
  double lower = 0.0;  // bracket for the limit gamma(g,h)
  double upper = 0.0;
};

struct GrowthEstimate {
  double value = 0.0;  // gamma_n/n at the largest computed n
  long long n_used = 0;
  double lower = 0.0;
  double upper = 0.0;
  bool certified = false;
};

struct GrowthTrace {
  std::vector<GrowthRow> rows;
  GrowthEstimate estimate;
};

// gamma_n/n along the doubling schedule {1, 2, 4, ...} up to n_max (n_max is
// always included). Row brackets bound the limit: with a registered sandwich
// certificate they intersect the a-priori envelope with the running minimum of
// quotients (quotients are upper bounds by subadditivity of gamma_n, and they
// are non-increasing along the doubling schedule); without one the bracket is
// the uncertified heuristic [q - 1/n, min quotient].
template <class Element>
GrowthTrace relative_growth(const GroupModel<Element>& model, const Element& g, const Element& h,
                            long long n_max, const GammaOptions& opts = {}) {
  if (n_max < 1) throw DomainError("relative_growth: n_max must be positive");
  std::vector<long long> schedule;
  for (long long n = 1; n < n_max; n <<= 1) schedule.push_back(n);
  schedule.push_back(n_max);

  double fg = 0, fh = 0, dbound = 0, c1 = 0;
  bool certified = false;
  if (model.certificate) {
    fg = model.certificate->f.eval(g);
    fh = model.certificate->f.eval(h);
    dbound = model.certificate->f.defect_bound;
    c1 = model.certificate->c1;
    certified = fg > 0;
  }

  GrowthTrace out;
  double min_quotient = std::numeric_limits<double>::infinity();
  std::optional<long long> prev_gamma;
  long long prev_n = 1;
  for (const long long n : schedule) {
    GammaOptions local = opts;
    if (prev_gamma && !local.hint) {
      const long long center =
          std::llround(static_cast<double>(*prev_gamma) * static_cast<double>(n) / static_cast<double>(prev_n));
      local.hint = {center - 2, center + 2};
    }
    const long long gam = gamma_n(model, g, h, n, local);
    prev_gamma = gam;
    prev_n = n;
    const double q = static_cast<double>(gam) / static_cast<double>(n);
    min_quotient = std::min(min_quotient, q);

    GrowthRow row;
    row.n = n;
    row.gamma = gam;
    row.quotient = q;
    if (certified) {
      const double dn = static_cast<double>(n);
      row.lower = fh / fg - dbound / (dn * fg);
      row.upper = std::min(fh / fg + (c1 + dbound + fg) / (dn * fg), min_quotient);
    } else {
      row.lower = q - 1.0 / static_cast<double>(n);
      row.upper = min_quotient;
    }
    out.rows.push_back(row);
  }

  const GrowthRow& last = out.rows.back();
  out.estimate.value = last.quotient;
  out.estimate.n_used = last.n;
  out.estimate.certified = certified;
  // Clamp so lower <= value <= upper survives the quotient/envelope mix; both
  // ends remain valid bounds on the limit.
  out.estimate.lower = std::min(last.lower, last.quotient);
  out.estimate.upper = std::max(last.upper, last.quotient);
  return out;
}

}  // namespace og
