//! Integer helpers on arbitrary precision integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type Int = BigInt;

pub fn int(x: i64) -> Int {
    Int::from(x)
}

pub fn ints(xs: &[i64]) -> Vec<Int> {
    xs.iter().map(|&x| Int::from(x)).collect()
}

/// Floor division, rounding toward negative infinity.
pub fn floor_div(a: &Int, b: &Int) -> Int {
    a.div_floor(b)
}

/// Representative of `a` in `[0, |m|)`; `m = 0` leaves `a` unchanged.
pub fn modulo(a: &Int, m: &Int) -> Int {
    if m.is_zero() {
        a.clone()
    } else {
        a.mod_floor(&m.abs())
    }
}

/// Non-negative gcd.
pub fn gcd(a: &Int, b: &Int) -> Int {
    a.gcd(b)
}

/// Returns `(g, x, y)` with `a x + b y = g = gcd(a, b) >= 0`.
pub fn ext_gcd(a: &Int, b: &Int) -> (Int, Int, Int) {
    let e = a.extended_gcd(b);
    if e.gcd.is_negative() {
        (-e.gcd, -e.x, -e.y)
    } else {
        (e.gcd, e.x, e.y)
    }
}

/// Least common multiple carrying the sign of `a b`.
pub fn signed_lcm(a: &Int, b: &Int) -> Int {
    let g = gcd(a, b);
    if g.is_zero() {
        return Int::zero();
    }
    (a * b) / g
}

/// Distinct prime divisors of `|n|`, ascending, with multiplicities.
pub fn factorize(n: &Int) -> Vec<(Int, u32)> {
    let mut n = n.abs();
    let mut out = Vec::new();
    if n.is_zero() {
        return out;
    }
    let mut p = int(2);
    while &p * &p <= n {
        let mut k = 0;
        while (&n % &p).is_zero() {
            n /= &p;
            k += 1;
        }
        if k > 0 {
            out.push((p.clone(), k));
        }
        p += if p == int(2) { Int::one() } else { int(2) };
    }
    if n > Int::one() {
        out.push((n, 1));
    }
    out
}

pub fn to_i64(x: &Int) -> Option<i64> {
    i64::try_from(x).ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floor_division_rounds_down() {
        assert_eq!(floor_div(&int(-3), &int(2)), int(-2));
        assert_eq!(floor_div(&int(5), &int(2)), int(2));
        assert_eq!(modulo(&int(-1), &int(3)), int(2));
    }

    #[test]
    fn lcm_sign_follows_product() {
        assert_eq!(signed_lcm(&int(-4), &int(6)), int(-12));
        assert_eq!(signed_lcm(&int(0), &int(6)), int(0));
        assert_eq!(gcd(&int(0), &int(-6)), int(6));
    }

    #[test]
    fn factorization() {
        assert_eq!(factorize(&int(360)), vec![(int(2), 3), (int(3), 2), (int(5), 1)]);
        assert!(factorize(&int(1)).is_empty());
        let (g, x, y) = ext_gcd(&int(-4), &int(6));
        assert_eq!(g, int(2));
        assert_eq!(int(-4) * x + int(6) * y, int(2));
    }
}
