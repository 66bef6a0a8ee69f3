#ifndef GPBOUND_ELLIPTIC_HPP
#define GPBOUND_ELLIPTIC_HPP

// Jacobi elliptic functions and the incomplete elliptic integral of the
// first kind, in the *modulus* convention: the second argument m multiplies
// the integrand as m^2 sin^2(theta).  The conventional "parameter" of
// Abramowitz & Stegun equals m^2 here, so cross-checks against tables or
// other libraries must square the modulus first.
//
// Everything is templated on the floating type; double and long double are
// instantiated in elliptic.cpp.  The long double instantiation exists so
// that finite-difference residual checks are not dominated by rounding of
// the function values.

namespace gpbound {

template <class T>
struct EllipticTripleT {
  T sn;
  T cn;
  T dn;
};

using EllipticTriple = EllipticTripleT<double>;

/// Complete elliptic integral of the first kind K(m), modulus m in
/// [0, 1 - 1e-14).  Arithmetic-geometric mean iteration.
template <class T>
T complete_k(T m);

/// Incomplete elliptic integral of the first kind,
/// F(phi, m) = integral_0^phi dtheta / sqrt(1 - m^2 sin^2 theta).
/// Odd and strictly increasing in phi; arguments beyond |phi| = pi/2 are
/// reduced with F(phi + pi) = F(phi) + 2K.  m = 1 is accepted for
/// |phi| < pi/2 only (F = artanh(sin phi)).
template <class T>
T ellip_f(T phi, T m);

/// Jacobi amplitude am(u, m), the functional inverse of ellip_f.
/// Monotone in u, extended to the whole axis by am(u + 2K) = am(u) + pi.
template <class T>
T jacobi_am(T u, T m);

/// sn, cn, dn at (u, m); m in [0, 1].  sn = sin(am), cn = cos(am),
/// dn = sqrt(1 - m^2 sn^2); the hyperbolic limit is used for m -> 1.
template <class T>
EllipticTripleT<T> jacobi_sn_cn_dn(T u, T m);

extern template double complete_k<double>(double);
extern template double ellip_f<double>(double, double);
extern template double jacobi_am<double>(double, double);
extern template EllipticTripleT<double> jacobi_sn_cn_dn<double>(double, double);

extern template long double complete_k<long double>(long double);
extern template long double ellip_f<long double>(long double, long double);
extern template long double jacobi_am<long double>(long double, long double);
extern template EllipticTripleT<long double>
jacobi_sn_cn_dn<long double>(long double, long double);

}  // namespace gpbound

#endif
