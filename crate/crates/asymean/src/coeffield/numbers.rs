//! Bernoulli numbers and endpoint power sums.

use num::{BigInt, BigRational, One, Zero};

use super::coefficient::Coefficient;

/// `B_0 … B_n` by the defining recurrence, with the `B_1 = -1/2`
/// convention (the one under which `ψ(x) ~ log x + x⁻¹ Σ (-1)ⁿ B_{n+1}/(n+1) x⁻ⁿ`).
pub fn bernoulli_list(n: usize) -> Vec<BigRational> {
    let mut b: Vec<BigRational> = Vec::with_capacity(n + 1);
    b.push(BigRational::one());
    for m in 1..=n {
        // sum_{j=0}^{m} C(m+1, j) B_j = 0
        let mut acc = BigRational::zero();
        for (j, bj) in b.iter().enumerate() {
            acc += bj * BigRational::from_integer(binomial_int(m as u64 + 1, j as u64));
        }
        let div = BigRational::from_integer(BigInt::from(m as u64 + 1));
        b.push(-acc / div);
    }
    b
}

pub fn bernoulli(n: usize) -> BigRational {
    bernoulli_list(n).pop().unwrap()
}

pub fn binomial_int(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

pub fn factorial(n: u64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= BigInt::from(i);
    }
    acc
}

/// `h_k(s,t) = (t^{k+1} - s^{k+1}) / ((k+1)(t-s))`, evaluated as the
/// polynomial `(1/(k+1)) Σ_{i=0}^{k} s^i t^{k-i}` so the division is exact
/// for all endpoints, including `s = t`.
pub fn power_sum(k: u64, s: &Coefficient, t: &Coefficient) -> Coefficient {
    let table = s.table();
    let mut acc = Coefficient::zero(table);
    for i in 0..=k {
        let term = &s.pow(i as i64).unwrap() * &t.pow((k - i) as i64).unwrap();
        acc = &acc + &term;
    }
    acc.scale(&BigRational::new(BigInt::one(), BigInt::from(k + 1)))
}
