//! Small statistics helpers shared by the DFR estimator and the attack
//! analysis: Wilson intervals and two-sample tests.

/// Wilson score interval for a binomial proportion.
pub fn wilson_interval(successes: u64, trials: u64, z: f64) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    let n = trials as f64;
    let phat = successes as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = (phat + z2 / (2.0 * n)) / denom;
    let half = z * ((phat * (1.0 - phat) + z2 / (4.0 * n)) / n).sqrt() / denom;
    ((center - half).max(0.0), (center + half).min(1.0))
}

/// Two-proportion z statistic with pooled variance.
pub fn two_proportion_z(x1: u64, n1: u64, x2: u64, n2: u64) -> f64 {
    let (n1f, n2f) = (n1 as f64, n2 as f64);
    let p1 = x1 as f64 / n1f;
    let p2 = x2 as f64 / n2f;
    let pooled = (x1 + x2) as f64 / (n1f + n2f);
    let var = pooled * (1.0 - pooled) * (1.0 / n1f + 1.0 / n2f);
    if var <= 0.0 {
        return 0.0;
    }
    (p1 - p2) / var.sqrt()
}

pub fn mean(xs: &[f64]) -> f64 {
    if xs.is_empty() {
        return 0.0;
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

/// Standard error of the sample mean.
pub fn standard_error(xs: &[f64]) -> f64 {
    if xs.is_empty() {
        return f64::INFINITY;
    }
    (variance(xs) / xs.len() as f64).sqrt()
}

/// Welch z statistic for the difference of two group means.
pub fn welch_z(a: &[f64], b: &[f64]) -> f64 {
    let se2 = variance(a) / a.len().max(1) as f64 + variance(b) / b.len().max(1) as f64;
    if se2 <= 0.0 {
        return 0.0;
    }
    (mean(a) - mean(b)) / se2.sqrt()
}

/// Critical value of the standard normal for common two-sided levels.
pub fn z_critical(alpha: f64) -> f64 {
    // the harness only ever asks for these levels
    if (alpha - 0.01).abs() < 1e-12 {
        2.5758
    } else if (alpha - 0.05).abs() < 1e-12 {
        1.96
    } else {
        panic!("unsupported alpha {alpha}")
    }
}
