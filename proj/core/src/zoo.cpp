#include "bernstein/zoo.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>

#include "bernstein/stats.hpp"

namespace bernstein {

char zoo_label(ZooId id) {
  return static_cast<char>('a' + static_cast<int>(id));
}

ZooId zoo_id_from(std::string_view name) {
  if (name.size() == 1 && name[0] >= 'a' && name[0] <= 'j') {
    return static_cast<ZooId>(name[0] - 'a');
  }
  throw std::invalid_argument("zoo_id_from: expected a..j, got '" +
                              std::string(name) + "'");
}

namespace {

// --- beta building blocks (integer parameters) ---

struct BetaComponent {
  int p, q;

  double norm() const {
    // 1/B(p,q), exact in double for the orders used here
    return std::exp(std::lgamma(p + q) - std::lgamma(p) - std::lgamma(q));
  }

  // k-th derivative of x^(p-1) (1-x)^(q-1) / B(p,q) by the Leibniz rule,
  // in product form: expanding into monomials loses ~7 digits to
  // cancellation for orders like (10,10)
  double deriv(int k, double x) const {
    const int a = p - 1, b = q - 1;
    double sum = 0.0;
    double binom = 1.0;  // C(k, j)
    for (int j = 0; j <= k; ++j) {
      const int ea = a - j, eb = b - (k - j);
      if (ea >= 0 && eb >= 0) {
        double coef = binom;
        for (int i = 0; i < j; ++i) coef *= a - i;
        for (int i = 0; i < k - j; ++i) coef *= -(b - i);
        sum += coef * std::pow(x, ea) * std::pow(1.0 - x, eb);
      }
      binom = binom * (k - j) / (j + 1.0);
    }
    return norm() * sum;
  }

  double pdf(double x) const { return deriv(0, x); }
  double cdf(double x) const { return reg_inc_beta(p, q, x); }

  // p-th smallest of p+q-1 iid uniforms is Beta(p, q)
  double draw(std::mt19937_64& gen) const {
    double u[32];
    const int count = p + q - 1;
    for (int i = 0; i < count; ++i) u[i] = uniform01(gen);
    std::nth_element(u, u + (p - 1), u + count);
    return u[p - 1];
  }
};

// --- truncated components ---

struct TruncExp {
  double theta = 0.8;
  double denom() const { return 1.0 - std::exp(-1.0 / theta); }
  double pdf(double x) const {
    return std::exp(-x / theta) / (theta * denom());
  }
  double cdf(double x) const {
    return (1.0 - std::exp(-x / theta)) / denom();
  }
  double draw(std::mt19937_64& gen) const {
    return -theta * std::log1p(-uniform01(gen) * denom());
  }
};

struct TruncNormal {
  double mu;
  double lo_p, hi_p;  // Phi(0 - mu), Phi(1 - mu)

  explicit TruncNormal(double mean)
      : mu(mean), lo_p(normal_cdf(-mean)), hi_p(normal_cdf(1.0 - mean)) {}

  double mass() const { return hi_p - lo_p; }
  double pdf(double x) const {
    const double t = x - mu;
    return std::exp(-0.5 * t * t) /
           (std::sqrt(2.0 * std::numbers::pi) * mass());
  }
  // k-th derivative via probabilists' Hermite polynomials
  double deriv(int k, double x) const {
    const double t = x - mu;
    double he = 1.0;
    switch (k) {
      case 0: he = 1.0; break;
      case 1: he = t; break;
      case 2: he = t * t - 1.0; break;
      case 3: he = t * (t * t - 3.0); break;
      case 4: he = t * t * (t * t - 6.0) + 3.0; break;
      default: throw std::domain_error("TruncNormal::deriv: order > 4");
    }
    return (k % 2 == 0 ? 1.0 : -1.0) * he * pdf(x);
  }
  double cdf(double x) const { return (normal_cdf(x - mu) - lo_p) / mass(); }
  double draw(std::mt19937_64& gen) const {
    const double p = lo_p + uniform01(gen) * mass();
    return mu + normal_quantile(p);
  }
};

// --- assembly helpers ---

TrueDensity beta_density(const BetaComponent& c) {
  auto dk = [c](int k) {
    return [c, k](double x) { return c.deriv(k, x); };
  };
  return TrueDensity(dk(0), dk(1), dk(2), dk(3), dk(4));
}

TrueDensity beta_mixture_density(const BetaComponent& c1,
                                 const BetaComponent& c2) {
  auto dk = [c1, c2](int k) {
    return [c1, c2, k](double x) {
      return 0.5 * c1.deriv(k, x) + 0.5 * c2.deriv(k, x);
    };
  };
  return TrueDensity(dk(0), dk(1), dk(2), dk(3), dk(4));
}

ZooDensity make_beta(ZooId id, int p, int q) {
  const BetaComponent comp{p, q};
  return ZooDensity(
      id, beta_density(comp), [comp](double x) { return comp.cdf(x); },
      [comp](std::mt19937_64& gen) { return comp.draw(gen); });
}

ZooDensity make_beta_mixture(ZooId id, int p1, int q1, int p2, int q2) {
  const BetaComponent c1{p1, q1}, c2{p2, q2};
  return ZooDensity(
      id, beta_mixture_density(c1, c2),
      [c1, c2](double x) { return 0.5 * c1.cdf(x) + 0.5 * c2.cdf(x); },
      [c1, c2](std::mt19937_64& gen) {
        const bool first = uniform01(gen) < 0.5;
        return first ? c1.draw(gen) : c2.draw(gen);
      });
}

ZooDensity make_trunc_exp(ZooId id) {
  const TruncExp e{};
  auto pdf = [e](double x) { return e.pdf(x); };
  auto dk = [e](int k) {
    const double scale = std::pow(-1.0 / e.theta, k);
    return [e, scale](double x) { return scale * e.pdf(x); };
  };
  TrueDensity density(pdf, dk(1), dk(2), dk(3), dk(4));
  return ZooDensity(
      id, std::move(density), [e](double x) { return e.cdf(x); },
      [e](std::mt19937_64& gen) { return e.draw(gen); });
}

ZooDensity make_trunc_normal(ZooId id) {
  const TruncNormal n(0.0);
  auto dk = [n](int k) {
    return [n, k](double x) { return n.deriv(k, x); };
  };
  TrueDensity density(dk(0), dk(1), dk(2), dk(3), dk(4));
  return ZooDensity(
      id, std::move(density), [n](double x) { return n.cdf(x); },
      [n](std::mt19937_64& gen) { return n.draw(gen); });
}

ZooDensity make_trunc_normal_mixture(ZooId id) {
  const TruncNormal hi(2.0), lo(-3.0);
  const double w_hi = 0.25, w_lo = 0.75;
  auto dk = [hi, lo, w_hi, w_lo](int k) {
    return [hi, lo, w_hi, w_lo, k](double x) {
      return w_hi * hi.deriv(k, x) + w_lo * lo.deriv(k, x);
    };
  };
  TrueDensity density(dk(0), dk(1), dk(2), dk(3), dk(4));
  return ZooDensity(
      id, std::move(density),
      [hi, lo, w_hi, w_lo](double x) {
        return w_hi * hi.cdf(x) + w_lo * lo.cdf(x);
      },
      [hi, lo, w_hi](std::mt19937_64& gen) {
        const bool first = uniform01(gen) < w_hi;
        return first ? hi.draw(gen) : lo.draw(gen);
      });
}

ZooDensity make_zoo(ZooId id) {
  switch (id) {
    case ZooId::a: return make_beta(id, 3, 5);
    case ZooId::b: return make_beta(id, 1, 6);
    case ZooId::c: return make_beta(id, 3, 1);
    case ZooId::d: return make_beta_mixture(id, 3, 9, 9, 3);
    case ZooId::e: return make_beta_mixture(id, 3, 1, 10, 10);
    case ZooId::f: return make_beta_mixture(id, 1, 6, 3, 5);
    case ZooId::g: return make_beta_mixture(id, 2, 1, 1, 4);
    case ZooId::h: return make_trunc_exp(id);
    case ZooId::i: return make_trunc_normal(id);
    case ZooId::j: return make_trunc_normal_mixture(id);
  }
  throw std::invalid_argument("make_zoo: bad id");
}

} // namespace

const ZooDensity& zoo_density(ZooId id) {
  static std::mutex mtx;
  static std::map<ZooId, ZooDensity> registry;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = registry.find(id);
  if (it == registry.end()) {
    it = registry.emplace(id, make_zoo(id)).first;
  }
  return it->second;
}

std::vector<double> ZooDensity::sample(std::size_t n,
                                       std::uint64_t seed) const {
  std::mt19937_64 gen(seed);
  std::vector<double> out(n);
  for (double& v : out) v = draw_(gen);
  return out;
}

} // namespace bernstein
