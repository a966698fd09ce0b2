//! Small numeric utilities shared across modules.

use num_complex::Complex64;

/// Kahan compensated accumulator. Averages over tens of thousands of terms
/// (vertex sums, ensemble means) must not drift, and the summation order is
/// part of the determinism contract, so we sum in a fixed order with
/// compensation instead of reassociating.
#[derive(Debug, Clone, Copy, Default)]
pub struct KahanSum {
    sum: f64,
    comp: f64,
}

impl KahanSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: f64) {
        let y = x - self.comp;
        let t = self.sum + y;
        self.comp = (t - self.sum) - y;
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum
    }
}

/// Compensated complex accumulator (componentwise Kahan).
#[derive(Debug, Clone, Copy, Default)]
pub struct KahanComplex {
    re: KahanSum,
    im: KahanSum,
}

impl KahanComplex {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, z: Complex64) {
        self.re.add(z.re);
        self.im.add(z.im);
    }

    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re.value(), self.im.value())
    }
}

/// `x^k` by binary exponentiation; identical on every build configuration.
pub fn powi(x: f64, k: u32) -> f64 {
    let mut base = x;
    let mut exp = k;
    let mut acc = 1.0;
    while exp > 0 {
        if exp & 1 == 1 {
            acc *= base;
        }
        base *= base;
        exp >>= 1;
    }
    acc
}

/// Mean and sample standard deviation (denominator `len - 1`).
///
/// Returns `(mean, 0.0)` for a single observation. The values are summed in
/// slice order with compensation, so callers control determinism by fixing
/// the order of `xs`.
pub fn mean_std(xs: &[f64]) -> (f64, f64) {
    assert!(!xs.is_empty(), "mean_std of empty slice");
    let mut acc = KahanSum::new();
    for &x in xs {
        acc.add(x);
    }
    let mean = acc.value() / xs.len() as f64;
    if xs.len() < 2 {
        return (mean, 0.0);
    }
    let mut sq = KahanSum::new();
    for &x in xs {
        let d = x - mean;
        sq.add(d * d);
    }
    (mean, crate::math::sqrt(sq.value() / (xs.len() - 1) as f64))
}
