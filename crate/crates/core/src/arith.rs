//! Small integer helpers: factoring, residue symbols, integer roots.

use num_integer::Integer;

pub fn gcd(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}

pub fn gcd_all(xs: &[i64]) -> i64 {
    xs.iter().fold(0, |g, &x| g.gcd(&x))
}

/// Floor square root of a nonnegative integer.
pub fn isqrt(n: i128) -> i128 {
    assert!(n >= 0, "isqrt of negative");
    if n < 2 {
        return n;
    }
    let mut x = (n as f64).sqrt() as i128;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

pub fn is_square(n: i128) -> bool {
    n >= 0 && {
        let r = isqrt(n);
        r * r == n
    }
}

/// Distinct prime divisors of |n| in increasing order.
pub fn prime_factors(n: i64) -> Vec<i64> {
    factorize(n).into_iter().map(|(p, _)| p).collect()
}

/// Prime factorization of |n| as (prime, exponent) pairs.
pub fn factorize(n: i64) -> Vec<(i64, u32)> {
    let mut n = n.unsigned_abs();
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p as i64, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n as i64, 1));
    }
    out
}

pub fn is_prime(n: i64) -> bool {
    n >= 2 && factorize(n) == vec![(n, 1)]
}

pub fn is_squarefree(n: i64) -> bool {
    n != 0 && factorize(n).iter().all(|&(_, e)| e == 1)
}

/// Number of distinct prime factors.
pub fn omega(n: i64) -> u32 {
    prime_factors(n).len() as u32
}

/// Positive divisors of n in increasing order.
pub fn divisors(n: i64) -> Vec<i64> {
    let mut out = vec![1i64];
    for (p, e) in factorize(n) {
        let len = out.len();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                out.push(out[i] * pk);
            }
        }
    }
    out.sort_unstable();
    out
}

pub fn moebius(n: i64) -> i64 {
    let f = factorize(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Exponent of p in n (n != 0).
pub fn valuation(n: i128, p: i64) -> u32 {
    assert!(n != 0, "valuation of zero");
    let p = p as i128;
    let mut n = n;
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    v
}

/// Kronecker symbol (a/n) for arbitrary integers.
pub fn kronecker(a: i64, n: i64) -> i32 {
    if n == 0 {
        return if a == 1 || a == -1 { 1 } else { 0 };
    }
    let mut result = 1;
    let mut n = n;
    if n < 0 {
        n = -n;
        if a < 0 {
            result = -result;
        }
    }
    let twos = n.trailing_zeros();
    if twos > 0 {
        if a % 2 == 0 {
            return 0;
        }
        n >>= twos;
        if twos % 2 == 1 && matches!(a.rem_euclid(8), 3 | 5) {
            result = -result;
        }
    }
    result * jacobi(a, n)
}

/// Jacobi symbol (a/n), n odd positive.
pub fn jacobi(a: i64, n: i64) -> i32 {
    assert!(n > 0 && n % 2 == 1, "jacobi needs odd positive modulus");
    let mut a = a.rem_euclid(n);
    let mut n = n;
    let mut t = 1;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            if matches!(n % 8, 3 | 5) {
                t = -t;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            t = -t;
        }
        a %= n;
    }
    if n == 1 {
        t
    } else {
        0
    }
}

/// Modular inverse of a mod m (m > 1), if it exists.
pub fn mod_inverse(a: i128, m: i128) -> Option<i128> {
    let (mut r0, mut r1) = (a.rem_euclid(m), m);
    let (mut s0, mut s1) = (1i128, 0i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    (r0 == 1).then(|| s0.rem_euclid(m))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kronecker_at_two() {
        assert_eq!(kronecker(1, 2), 1);
        assert_eq!(kronecker(7, 2), 1);
        assert_eq!(kronecker(3, 2), -1);
        assert_eq!(kronecker(-3, 2), -1);
        assert_eq!(kronecker(4, 2), 0);
    }

    #[test]
    fn kronecker_matches_euler_criterion() {
        for p in [3i64, 5, 7, 11, 13] {
            for a in -30i64..30 {
                let r = a.rem_euclid(p);
                let e = if r == 0 {
                    0
                } else {
                    let mut acc = 1i64;
                    for _ in 0..(p - 1) / 2 {
                        acc = acc * r % p;
                    }
                    if acc == 1 { 1 } else { -1 }
                };
                assert_eq!(kronecker(a, p), e, "({a}/{p})");
            }
        }
    }

    #[test]
    fn divisors_and_moebius() {
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(moebius(30), -1);
        assert_eq!(moebius(12), 0);
        assert!(is_squarefree(105));
        assert!(!is_squarefree(18));
    }

    #[test]
    fn isqrt_edges() {
        for n in 0..2000i128 {
            let r = isqrt(n);
            assert!(r * r <= n && (r + 1) * (r + 1) > n);
        }
        let big = (1i128 << 100) + 12345;
        let r = isqrt(big);
        assert!(r * r <= big && (r + 1) * (r + 1) > big);
    }

    #[test]
    fn inverse() {
        assert_eq!(mod_inverse(3, 7), Some(5));
        assert_eq!(mod_inverse(6, 9), None);
    }
}
