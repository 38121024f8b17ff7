//! Fixed-point logarithms on big integers, independent of the float code under test.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

pub const BITS: u64 = 256;

pub fn one() -> BigInt {
    BigInt::one() << BITS
}

/// `2 atanh(y)` for a fixed-point `y` with `|y| <= 1/3`.
pub fn two_atanh(num: &BigInt, den: &BigInt) -> BigInt {
    let mut sum = BigInt::zero();
    let y = (num << BITS) / den;
    let y2 = (&y * &y) >> BITS;
    let mut power = y;
    let mut k = 1u32;
    while !power.is_zero() {
        sum += &power / k;
        power = (&power * &y2) >> BITS;
        k += 2;
    }
    sum * 2
}

/// Natural log of a positive integer, fixed point.
pub fn ln_int(m: u64) -> BigInt {
    let ln2 = two_atanh(&BigInt::from(1), &BigInt::from(3));
    // m = 2^k * r with r in [1, 2)
    let k = 63 - m.leading_zeros() as u64;
    let (r_num, r_den) = (BigInt::from(m), BigInt::one() << k);
    let y = two_atanh(&(&r_num - &r_den), &(&r_num + &r_den));
    ln2 * k + y
}

pub fn to_f64(x: &BigInt) -> f64 {
    (x >> (BITS - 64)).to_f64().unwrap() / 2f64.powi(64)
}

/// `-sum p log2 p` as `(n ln n - sum c ln c) / (n ln 2)`.
pub fn oracle_entropy(counts: &[u64]) -> f64 {
    let n: u64 = counts.iter().sum();
    let mut acc = BigInt::from(n) * ln_int(n);
    for &c in counts.iter().filter(|&&c| c > 0) {
        acc -= BigInt::from(c) * ln_int(c);
    }
    let ln2 = ln_int(2);
    let q = (acc << BITS) / (BigInt::from(n) * ln2);
    to_f64(&q)
}

pub fn oracle_conditional(blocks: &[Vec<u64>]) -> f64 {
    let n: u64 = blocks.iter().flatten().sum();
    blocks
        .iter()
        .filter(|b| b.iter().sum::<u64>() > 0)
        .map(|b| b.iter().sum::<u64>() as f64 / n as f64 * oracle_entropy(b))
        .sum()
}
