//! Batch-means summaries, two-sample Kolmogorov–Smirnov, chi-square.

use serde::{Deserialize, Serialize};
use statrs::distribution::{ChiSquared, ContinuousCDF, StudentsT};

/// Batches used for the standard error.
pub const MAX_BATCHES: usize = 20;

/// Mean with a batch-means standard error and a 99% t interval.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub count: usize,
    pub mean: f64,
    pub variance: f64,
    pub std_err: f64,
    pub lo99: f64,
    pub hi99: f64,
}

pub fn mean(xs: &[f64]) -> f64 {
    if xs.is_empty() {
        return f64::NAN;
    }
    xs.iter().sum::<f64>() / xs.len() as f64
}

/// Unbiased sample variance.
pub fn variance(xs: &[f64]) -> f64 {
    if xs.len() < 2 {
        return 0.0;
    }
    let m = mean(xs);
    xs.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / (xs.len() - 1) as f64
}

pub fn median(xs: &[f64]) -> f64 {
    let mut v = xs.to_vec();
    v.sort_by(|a, b| a.total_cmp(b));
    let n = v.len();
    if n == 0 {
        f64::NAN
    } else if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}

/// Two-sided 99% Student t quantile with `df` degrees of freedom.
pub fn t99(df: usize) -> f64 {
    StudentsT::new(0.0, 1.0, df.max(1) as f64).expect("valid").inverse_cdf(0.995)
}

impl Summary {
    /// Values in trial order are split into min(n, 20) contiguous batches.
    pub fn of(xs: &[f64]) -> Summary {
        let n = xs.len();
        let m = mean(xs);
        let var = variance(xs);
        if n < 2 {
            return Summary { count: n, mean: m, variance: var, std_err: 0.0, lo99: m, hi99: m };
        }
        let b = n.min(MAX_BATCHES);
        let means: Vec<f64> = (0..b).map(|k| mean(&xs[k * n / b..(k + 1) * n / b])).collect();
        let se = (variance(&means) / b as f64).sqrt();
        let h = t99(b - 1) * se;
        Summary { count: n, mean: m, variance: var, std_err: se, lo99: m - h, hi99: m + h }
    }

    pub fn scaled(&self, k: f64) -> Summary {
        let (lo, hi) = if k >= 0.0 { (self.lo99 * k, self.hi99 * k) } else { (self.hi99 * k, self.lo99 * k) };
        Summary {
            count: self.count,
            mean: self.mean * k,
            variance: self.variance * k * k,
            std_err: self.std_err * k.abs(),
            lo99: lo,
            hi99: hi,
        }
    }
}

/// sup |F_a − F_b| of the two empirical distribution functions.
pub fn ks_two_sample(a: &[f64], b: &[f64]) -> f64 {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_by(|x, y| x.total_cmp(y));
    b.sort_by(|x, y| x.total_cmp(y));
    let (n, m) = (a.len() as f64, b.len() as f64);
    let (mut i, mut j, mut d) = (0usize, 0usize, 0.0f64);
    while i < a.len() && j < b.len() {
        let x = a[i].min(b[j]);
        while i < a.len() && a[i] <= x {
            i += 1;
        }
        while j < b.len() && b[j] <= x {
            j += 1;
        }
        d = d.max((i as f64 / n - j as f64 / m).abs());
    }
    d
}

/// Asymptotic critical value of the two-sample KS statistic at level 1%.
pub fn ks_critical_1pct(n: usize, m: usize) -> f64 {
    1.6276 * ((n + m) as f64 / (n * m) as f64).sqrt()
}

/// Pearson statistic against equal cell probabilities and its p-value.
pub fn chi_square_uniform(counts: &[u64]) -> (f64, f64) {
    let k = counts.len();
    let total: u64 = counts.iter().sum();
    if k < 2 || total == 0 {
        return (0.0, 1.0);
    }
    let e = total as f64 / k as f64;
    let stat: f64 = counts.iter().map(|&c| (c as f64 - e).powi(2) / e).sum();
    let p = 1.0 - ChiSquared::new((k - 1) as f64).expect("df ≥ 1").cdf(stat);
    (stat, p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn summary_of_constant_and_pair() {
        let s = Summary::of(&[2.0; 10]);
        assert_eq!((s.mean, s.std_err, s.lo99, s.hi99), (2.0, 0.0, 2.0, 2.0));
        let s = Summary::of(&[1.0, 3.0]);
        assert_eq!(s.mean, 2.0);
        assert!((s.std_err - 1.0).abs() < 1e-12);
        // t_{0.995, 1} = 63.657
        assert!((s.hi99 - 2.0 - 63.657).abs() < 1e-2);
        let one = Summary::of(&[5.0]);
        assert_eq!((one.lo99, one.hi99), (5.0, 5.0));
    }

    #[test]
    fn t_quantiles() {
        assert!((t99(19) - 2.861).abs() < 1e-3);
        assert!((t99(1000) - 2.581).abs() < 1e-2);
    }

    #[test]
    fn batch_means_with_many_trials() {
        let xs: Vec<f64> = (0..100).map(|i| (i % 7) as f64).collect();
        let s = Summary::of(&xs);
        assert_eq!(s.count, 100);
        assert!(s.std_err > 0.0 && s.lo99 < s.mean && s.mean < s.hi99);
    }

    #[test]
    fn ks_values() {
        assert_eq!(ks_two_sample(&[1.0, 2.0, 3.0], &[1.0, 2.0, 3.0]), 0.0);
        assert_eq!(ks_two_sample(&[1.0, 2.0], &[3.0, 4.0]), 1.0);
        assert!((ks_two_sample(&[1.0, 2.0, 3.0, 4.0], &[2.5, 3.5]) - 0.5).abs() < 1e-12);
        assert!((ks_critical_1pct(2000, 2000) - 0.05147).abs() < 1e-4);
    }

    #[test]
    fn chi_square_values() {
        let (s, p) = chi_square_uniform(&[50, 50]);
        assert_eq!(s, 0.0);
        assert!((p - 1.0).abs() < 1e-12);
        // (60-50)²/50·2 = 4 on one degree of freedom: p ≈ 0.0455
        let (s, p) = chi_square_uniform(&[60, 40]);
        assert!((s - 4.0).abs() < 1e-12);
        assert!((p - 0.0455).abs() < 1e-3);
    }
}
