//! Small counting helpers.

/// `n choose k`, exact in `usize`.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: usize = 1;
    for i in 0..k {
        // acc * (n - i) is divisible by (i + 1) at every step
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Number of multisets of size `n` over `d` symbols: `binom(d + n - 1, n)`.
pub fn multiset_count(d: usize, n: usize) -> usize {
    match (d, n) {
        (_, 0) => 1,
        (0, _) => 0,
        _ => binomial(d + n - 1, n),
    }
}

pub fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}
