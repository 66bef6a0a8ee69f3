#include "gpbound/elliptic.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace gpbound {

namespace {

// K(m) diverges logarithmically as m -> 1; refuse moduli this close.
constexpr double kModulusCeiling = 1.0 - 1e-14;
constexpr int kAgmMaxIter = 60;

template <class T>
void check_modulus(T m) {
  if (!(m >= T(0)) || m >= T(kModulusCeiling))
    throw std::domain_error("elliptic: modulus must lie in [0, 1 - 1e-14)");
}

// AGM scale for F/am.  Stores the c_n = (a_n - b_n)/2 sequence needed by the
// descending amplitude recurrence.
template <class T>
struct AgmTable {
  int n = 0;
  T a[kAgmMaxIter + 1];
  T c[kAgmMaxIter + 1];
};

template <class T>
AgmTable<T> agm_table(T m) {
  AgmTable<T> t;
  T a = T(1);
  T b = std::sqrt((T(1) - m) * (T(1) + m));  // complementary modulus
  t.a[0] = a;
  t.c[0] = m;
  const T eps = std::numeric_limits<T>::epsilon();
  int n = 0;
  while (std::abs(t.c[n]) > eps * t.a[n] && n < kAgmMaxIter) {
    const T an = (a + b) / 2;
    const T cn = (a - b) / 2;
    b = std::sqrt(a * b);
    a = an;
    ++n;
    t.a[n] = a;
    t.c[n] = cn;
  }
  t.n = n;
  return t;
}

// Phase-doubling increment: the angle d with tan(d) = (b/a) tan(ph), chosen
// on the branch that keeps ph_{n+1} ~ 2 ph_n.  Writing ph = k*pi + rho with
// rho in [0, pi) makes atan2 pick the right quadrant.
template <class T>
T landen_increment(T ratio, T ph) {
  const T pi = std::numbers::pi_v<T>;
  const T k = std::floor(ph / pi);
  const T rho = ph - k * pi;
  return k * pi + std::atan2(ratio * std::sin(rho), std::cos(rho));
}

// F on the principal interval [-pi/2, pi/2].
template <class T>
T ellip_f_core(T r, T m) {
  if (m == T(0)) return r;
  T a = T(1);
  T b = std::sqrt((T(1) - m) * (T(1) + m));
  T c = m;
  T ph = r;
  T scale = T(1);
  const T eps = std::numeric_limits<T>::epsilon();
  for (int i = 0; i < kAgmMaxIter && std::abs(c) > eps * a; ++i) {
    ph += landen_increment(b / a, ph);
    const T an = (a + b) / 2;
    c = (a - b) / 2;
    b = std::sqrt(a * b);
    a = an;
    scale *= T(2);
  }
  return ph / (scale * a);
}

// am on [-K, K] by the descending Landen recurrence (A&S 16.4).
template <class T>
T jacobi_am_core(T r, const AgmTable<T>& t) {
  T ph = std::ldexp(t.a[t.n] * r, t.n);
  for (int n = t.n; n >= 1; --n) {
    T s = t.c[n] / t.a[n] * std::sin(ph);
    if (s > T(1)) s = T(1);
    if (s < T(-1)) s = T(-1);
    ph = (ph + std::asin(s)) / 2;
  }
  return ph;
}

}  // namespace

template <class T>
T complete_k(T m) {
  check_modulus(m);
  T a = T(1);
  T b = std::sqrt((T(1) - m) * (T(1) + m));
  const T eps = std::numeric_limits<T>::epsilon();
  for (int i = 0; i < kAgmMaxIter && std::abs(a - b) > eps * a; ++i) {
    const T an = (a + b) / 2;
    b = std::sqrt(a * b);
    a = an;
  }
  return std::numbers::pi_v<T> / (2 * a);
}

template <class T>
T ellip_f(T phi, T m) {
  if (!std::isfinite(phi)) throw std::domain_error("elliptic: phi must be finite");
  const T pi = std::numbers::pi_v<T>;
  if (m == T(1)) {
    if (std::abs(phi) >= pi / 2)
      throw std::domain_error("elliptic: F(phi, 1) diverges for |phi| >= pi/2");
    return std::atanh(std::sin(phi));
  }
  check_modulus(m);
  const T n = std::round(phi / pi);
  const T r = phi - n * pi;
  T f = ellip_f_core(std::abs(r), m);
  if (r < T(0)) f = -f;
  if (n != T(0)) f += 2 * n * complete_k(m);
  return f;
}

template <class T>
T jacobi_am(T u, T m) {
  if (!std::isfinite(u)) throw std::domain_error("elliptic: u must be finite");
  check_modulus(m);
  if (m < T(1e-8)) {
    // F(phi,m) = phi + (m^2/4)(phi - sin phi cos phi) + O(m^4), inverted.
    return u - m * m / 4 * (u - std::sin(u) * std::cos(u));
  }
  const T K = complete_k(m);
  const T q = std::round(u / (2 * K));
  const T r = u - 2 * K * q;
  const AgmTable<T> t = agm_table(m);
  return jacobi_am_core(r, t) + q * std::numbers::pi_v<T>;
}

template <class T>
EllipticTripleT<T> jacobi_sn_cn_dn(T u, T m) {
  if (!(m >= T(0)) || m > T(1))
    throw std::domain_error("elliptic: sn/cn/dn modulus must lie in [0, 1]");
  if (m >= T(kModulusCeiling)) {
    const T s = T(1) / std::cosh(u);
    return {std::tanh(u), s, s};
  }
  const T phi = jacobi_am(u, m);
  const T sn = std::sin(phi);
  const T cn = std::cos(phi);
  const T dn = std::sqrt(T(1) - m * m * sn * sn);
  return {sn, cn, dn};
}

template double complete_k<double>(double);
template double ellip_f<double>(double, double);
template double jacobi_am<double>(double, double);
template EllipticTripleT<double> jacobi_sn_cn_dn<double>(double, double);

template long double complete_k<long double>(long double);
template long double ellip_f<long double>(long double, long double);
template long double jacobi_am<long double>(long double, long double);
template EllipticTripleT<long double>
jacobi_sn_cn_dn<long double>(long double, long double);

}  // namespace gpbound
