#include "ocs/workload.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <numeric>
#include <utility>

namespace ocs {

std::uint64_t SeededRng::below(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("SeededRng::below: bound must be positive");
  // Reject the low (2^64 mod bound) raw values so the remainder is unbiased.
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    const std::uint64_t raw = engine_();
    if (raw >= threshold) return raw % bound;
  }
}

ChurnFraction ChurnFraction::parse(const std::string& text) {
  auto fail = [&]() -> ChurnFraction {
    throw std::invalid_argument("churn '" + text + "' is not a decimal in [0, 1]");
  };
  std::size_t pos = 0;
  std::int64_t mantissa = 0;
  int exponent = 0;
  int digits = 0;
  bool seen_point = false;
  for (; pos < text.size(); ++pos) {
    const char ch = text[pos];
    if (ch == '.') {
      if (seen_point) return fail();
      seen_point = true;
    } else if (ch >= '0' && ch <= '9') {
      if (mantissa == 0 && ch == '0') {
        if (seen_point) --exponent;
        ++digits;
        continue;
      }
      if (digits >= 18) return fail();
      mantissa = mantissa * 10 + (ch - '0');
      if (seen_point) --exponent;
      ++digits;
    } else {
      break;
    }
  }
  if (digits == 0) return fail();
  if (pos < text.size()) {
    if (text[pos] != 'e' && text[pos] != 'E') return fail();
    int e = 0;
    const char* first = text.data() + pos + 1;
    const char* last = text.data() + text.size();
    if (first != last && *first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, e);
    if (ec != std::errc{} || ptr != last) return fail();
    exponent += e;
  }
  ChurnFraction f{mantissa, 1};
  for (; exponent > 0; --exponent) {
    if (f.num > 10) return fail();  // anything this large exceeds 1
    f.num *= 10;
  }
  for (; exponent < 0; ++exponent) {
    if (f.den > std::numeric_limits<std::int64_t>::max() / 10) return fail();
    f.den *= 10;
  }
  const std::int64_t g = std::gcd(f.num, f.den);
  if (g > 1) {
    f.num /= g;
    f.den /= g;
  }
  if (f.num > f.den) return fail();
  return f;
}

ChurnFraction ChurnFraction::from_double(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc{}) throw std::invalid_argument("churn value is not representable");
  return parse(std::string(buf, ptr));
}

Count ChurnFraction::of(Count count) const {
  // num <= den, so num * count fits whenever den * count does.
  return static_cast<Count>((static_cast<__int128>(num) * count) / den);
}

PhysicalTopology gen_proportional_physical(const std::vector<Count>& r,
                                           const std::vector<Count>& a_prime,
                                           const std::vector<Count>& b_prime) {
  if (r.empty() || a_prime.empty()) throw std::invalid_argument("need n >= 1 and m >= 1");
  if (a_prime.size() != b_prime.size()) {
    throw std::invalid_argument("a_prime and b_prime must both have length m");
  }
  auto positive = [](const std::vector<Count>& v) {
    return std::all_of(v.begin(), v.end(), [](Count x) { return x > 0; });
  };
  if (!positive(r) || !positive(a_prime) || !positive(b_prime)) {
    throw std::invalid_argument("r, a_prime and b_prime entries must be positive");
  }
  const Count sa = std::accumulate(a_prime.begin(), a_prime.end(), Count{0});
  const Count sb = std::accumulate(b_prime.begin(), b_prime.end(), Count{0});
  if (sa != sb) {
    throw UnbalancedSpec("sum(a_prime)=" + std::to_string(sa) + " != sum(b_prime)=" +
                         std::to_string(sb));
  }
  const std::size_t m = a_prime.size();
  const std::size_t n = r.size();
  PhysicalTopology phys{IntMatrix(m, n), IntMatrix(m, n)};
  for (std::size_t s = 0; s < m; ++s) {
    for (std::size_t k = 0; k < n; ++k) {
      phys.a(s, k) = r[k] * a_prime[s];
      phys.b(s, k) = r[k] * b_prime[s];
    }
  }
  return phys;
}

Matching sample_matching(const PhysicalTopology& phys, std::uint64_t seed) {
  SeededRng rng(seed);
  const std::size_t m = phys.m();
  Matching x = Matching::zeros(phys.n(), m);
  std::vector<int> inputs;
  std::vector<int> outputs;
  for (std::size_t k = 0; k < phys.n(); ++k) {
    inputs.clear();
    outputs.clear();
    for (std::size_t s = 0; s < m; ++s) {
      inputs.insert(inputs.end(), static_cast<std::size_t>(phys.b(s, k)), static_cast<int>(s));
      outputs.insert(outputs.end(), static_cast<std::size_t>(phys.a(s, k)), static_cast<int>(s));
    }
    if (inputs.size() != outputs.size()) {
      throw std::invalid_argument("OCS " + std::to_string(k) + " has unbalanced ports");
    }
    rng.shuffle(outputs);
    for (std::size_t t = 0; t < inputs.size(); ++t) ++x[k](inputs[t], outputs[t]);
  }
  return x;
}

Matching perturb_matching(const Matching& u, const ChurnConfig& cfg) {
  // Offset keeps this stream distinct from sample_matching under the same seed.
  SeededRng rng(cfg.seed ^ 0x9E3779B97F4A7C15ULL);
  const std::size_t m = u.m();
  Matching v = u;
  std::vector<std::pair<int, int>> links;
  std::vector<std::size_t> picks;
  std::vector<int> detached;
  for (std::size_t k = 0; k < u.n(); ++k) {
    links.clear();
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        links.insert(links.end(), static_cast<std::size_t>(u[k](i, j)),
                     {static_cast<int>(i), static_cast<int>(j)});
      }
    }
    const auto chosen = static_cast<std::size_t>(cfg.churn.of(static_cast<Count>(links.size())));
    if (chosen == 0) continue;
    picks.resize(links.size());
    std::iota(picks.begin(), picks.end(), std::size_t{0});
    for (std::size_t t = 0; t < chosen; ++t) {
      std::swap(picks[t], picks[t + rng.below(links.size() - t)]);
    }
    picks.resize(chosen);
    std::sort(picks.begin(), picks.end());
    detached.clear();
    for (const auto p : picks) detached.push_back(links[p].second);
    rng.shuffle(detached);
    for (std::size_t t = 0; t < chosen; ++t) links[picks[t]].second = detached[t];

    IntMatrix xk(m, m);
    for (const auto& [i, j] : links) ++xk(i, j);
    v[k] = std::move(xk);
  }
  return v;
}

GeneratedInstance gen_instance(const std::vector<Count>& r, const std::vector<Count>& a_prime,
                               const std::vector<Count>& b_prime, const ChurnConfig& cfg) {
  GeneratedInstance g;
  g.instance.phys = gen_proportional_physical(r, a_prime, b_prime);
  g.instance.old_matching = sample_matching(g.instance.phys, cfg.seed);
  g.witness = perturb_matching(g.instance.old_matching, cfg);
  g.instance.target = logical_of(g.witness);
  g.r = r;
  g.a_prime = a_prime;
  g.b_prime = b_prime;
  g.cfg = cfg;
  return g;
}

}  // namespace ocs
