#include "quadorder/sandwich.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <random>
#include <thread>

#include "quadorder/random.hpp"

namespace quadorder {

namespace {

constexpr double kSpotCheckTol = 1e-9;

bool certifies(const OrderCertificate& c) {
  return c.verdict == Verdict::Certified &&
         (c.equal_measures || c.direction == Direction::FirstBelowSecond);
}

} // namespace

RulePair sandwich_rules(int n, Interval interval) {
  if (n < 1) throw std::invalid_argument("sandwich_rules: n must be >= 1");
  if (n % 2 == 1) return {gauss((n + 1) / 2, interval), lobatto((n + 3) / 2, interval)};
  return {radau_left((n + 2) / 2, interval), radau_right((n + 2) / 2, interval)};
}

MomentHypothesis check_moment_hypothesis(const Measure& mu, int n, double tol) {
  if (n < 1) throw std::invalid_argument("check_moment_hypothesis: n must be >= 1");
  for (int k = 1; k <= n; ++k) {
    const double got = mu.moment(k);
    const double want = uniform_moment(mu.interval(), k);
    if (std::abs(got - want) > tol * std::max({1.0, std::abs(got), std::abs(want)})) {
      return {false, k};
    }
  }
  return {true, 0};
}

double SpotCheck::violation() const {
  const double worst = std::max({lower - middle, middle - upper, 0.0});
  return scale > 0.0 ? worst / scale : worst;
}

bool SandwichResult::certified() const {
  return certifies(lower_certificate) && certifies(upper_certificate);
}

double SandwichResult::max_violation() const {
  double worst = 0.0;
  for (const SpotCheck& c : spot_checks) worst = std::max(worst, c.violation());
  return worst;
}

SandwichResult certify_sandwich(const Measure& mu, int n, double tol, std::uint64_t seed,
                                int spot_checks) {
  const MomentHypothesis hyp = check_moment_hypothesis(mu, n, tol);
  if (!hyp.holds) {
    throw MomentHypothesisError(
        hyp.first_failing, "moment " + std::to_string(hyp.first_failing) +
                               " does not match the uniform moment; the bounds cannot hold for "
                               "all " + std::to_string(n) + "-convex functions");
  }
  RulePair rules = sandwich_rules(n, mu.interval());
  const Measure lower_measure = from_rule(rules.lower);
  const Measure upper_measure = from_rule(rules.upper);

  SandwichResult result{n,
                        rules.lower,
                        rules.upper,
                        certify_s_convex_order(lower_measure, mu, n, tol),
                        certify_s_convex_order(mu, upper_measure, n, tol),
                        {},
                        seed};
  if (spot_checks > 0) {
    for (const TestFunction& f : sample_test_functions(n, spot_checks, seed, mu.interval())) {
      result.spot_checks.push_back({f, rules.lower.apply(f), expectation(mu, f),
                                    rules.upper.apply(f), f.max_abs(mu.interval())});
    }
  }
  return result;
}

Measure random_moment_matched_measure(int n, Interval interval, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("random_moment_matched_measure: n must be >= 1");
  std::mt19937_64 rng = make_stream(seed, 0x5a0000u + static_cast<std::uint64_t>(n));
  std::uniform_int_distribution<int> pick_count(1, 4);
  std::uniform_int_distribution<int> pick_kind(0, n <= 3 ? 5 : 4);
  std::uniform_int_distribution<int> pick_extra(0, 3);
  std::exponential_distribution<double> pick_weight(1.0);

  const int gauss_min = (n + 2) / 2;   // 2m - 1 >= n
  const int lobatto_min = (n + 4) / 2; // 2m - 3 >= n
  const int radau_min = (n + 3) / 2;   // 2m - 2 >= n

  const int count = pick_count(rng);
  std::vector<Measure> parts;
  std::vector<double> weights;
  for (int i = 0; i < count; ++i) {
    switch (pick_kind(rng)) {
    case 0: parts.push_back(uniform(interval)); break;
    case 1: parts.push_back(from_rule(gauss(gauss_min + pick_extra(rng), interval))); break;
    case 2: parts.push_back(from_rule(lobatto(lobatto_min + pick_extra(rng), interval))); break;
    case 3: parts.push_back(from_rule(radau_left(radau_min + pick_extra(rng), interval))); break;
    case 4: parts.push_back(from_rule(radau_right(radau_min + pick_extra(rng), interval))); break;
    default: parts.push_back(from_rule(chebyshev3(interval))); break;
    }
    double w = pick_weight(rng);
    while (w <= 0.0) w = pick_weight(rng);
    weights.push_back(w);
  }
  double total = 0.0;
  for (double w : weights) total += w;
  std::vector<std::pair<double, Measure>> components;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    components.emplace_back(weights[i] / total, std::move(parts[i]));
  }
  return mix(components);
}

Measure perturb_moment(const Measure& mu, int k, double weight) {
  if (k < 1) throw std::invalid_argument("perturb_moment: k must be >= 1");
  if (!(weight > 0.0 && weight < 1.0)) {
    throw std::invalid_argument("perturb_moment: weight must lie in (0, 1)");
  }
  const Interval& I = mu.interval();
  Measure nu = (k % 2 == 0) ? from_rule(gauss(k / 2, I)) : from_rule(radau_left((k + 1) / 2, I));
  const std::vector<std::pair<double, Measure>> parts{{1.0 - weight, mu}, {weight, std::move(nu)}};
  return mix(parts);
}

int CorpusReport::total_violations() const {
  int total = 0;
  for (const CorpusItem& item : items) total += item.violations;
  return total;
}

int CorpusReport::certified_count() const {
  return static_cast<int>(std::count_if(items.begin(), items.end(), [](const CorpusItem& i) {
    return i.lower == Verdict::Certified && i.upper == Verdict::Certified;
  }));
}

CorpusReport verify_corpus(int n, int count, std::uint64_t seed, Interval interval, int threads,
                           int spot_checks) {
  if (count < 0) throw std::invalid_argument("verify_corpus: count must be >= 0");
  CorpusReport report{n, seed, interval, std::vector<CorpusItem>(count)};

  auto run_item = [&](int i) {
    const std::uint64_t item_seed = make_stream(seed, static_cast<std::uint64_t>(i))();
    const Measure mu = random_moment_matched_measure(n, interval, item_seed);
    const SandwichResult r = certify_sandwich(mu, n, 1e-10, item_seed, spot_checks);
    CorpusItem& item = report.items[i];
    item.index = i;
    item.seed = item_seed;
    item.lower = r.lower_certificate.verdict;
    item.upper = r.upper_certificate.verdict;
    item.max_violation = r.max_violation();
    item.violations = static_cast<int>(
        std::count_if(r.spot_checks.begin(), r.spot_checks.end(),
                      [](const SpotCheck& c) { return c.violation() > kSpotCheckTol; }));
  };

  threads = std::clamp(threads, 1, std::max(1, count));
  if (threads == 1) {
    for (int i = 0; i < count; ++i) run_item(i);
    return report;
  }
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (int i = next++; i < count; i = next++) {
        try {
          run_item(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (std::thread& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
  return report;
}

} // namespace quadorder
