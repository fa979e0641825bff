use serde::Serialize;

/// Mergeable running mean and variance (Welford updates, Chan merges).
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Accumulator {
    count: usize,
    mean: f64,
    m2: f64,
}

impl Accumulator {
    pub fn push(&mut self, x: f64) {
        self.count += 1;
        let delta = x - self.mean;
        self.mean += delta / self.count as f64;
        self.m2 += delta * (x - self.mean);
    }

    pub fn merge(&self, other: &Accumulator) -> Accumulator {
        if self.count == 0 {
            return *other;
        }
        if other.count == 0 {
            return *self;
        }
        let count = self.count + other.count;
        let delta = other.mean - self.mean;
        let mean = self.mean + delta * other.count as f64 / count as f64;
        let m2 = self.m2 + other.m2 + delta * delta * (self.count * other.count) as f64 / count as f64;
        Accumulator { count, mean, m2 }
    }

    pub fn stats(&self) -> EnsembleStats {
        let variance = if self.count > 1 {
            self.m2 / (self.count - 1) as f64
        } else {
            0.0
        };
        EnsembleStats {
            count: self.count,
            mean: self.mean,
            variance,
            std_error: (self.count > 1).then(|| (variance / self.count as f64).sqrt()),
        }
    }
}

impl FromIterator<f64> for Accumulator {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = Accumulator::default();
        for x in iter {
            acc.push(x);
        }
        acc
    }
}

/// Sample mean, unbiased variance and standard error of the mean.
///
/// The standard error is `None` for fewer than two samples.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct EnsembleStats {
    pub count: usize,
    pub mean: f64,
    pub variance: f64,
    pub std_error: Option<f64>,
}

/// Least-squares slope of `y` against `x`.
pub fn fit_slope(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx) * (a - mx)).sum();
    sxy / sxx
}

/// Slope of `log y` against `log x`.
pub fn log_log_slope(x: &[f64], y: &[f64]) -> f64 {
    let lx: Vec<f64> = x.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = y.iter().map(|v| v.ln()).collect();
    fit_slope(&lx, &ly)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    #[test]
    fn known_sample() {
        let s: Accumulator = [1.0, 2.0, 3.0, 4.0].into_iter().collect();
        let st = s.stats();
        assert_eq!(st.mean, 2.5);
        assert_relative_eq!(st.variance, 5.0 / 3.0, max_relative = 1e-15);
        assert_relative_eq!(st.std_error.unwrap(), (5.0 / 12.0f64).sqrt(), max_relative = 1e-15);
    }

    #[test]
    fn single_sample_has_no_error_bar() {
        let s: Accumulator = [7.0].into_iter().collect();
        assert_eq!(s.stats().std_error, None);
        assert_eq!(s.stats().variance, 0.0);
    }

    #[test]
    fn slopes() {
        let x = [1.0, 2.0, 4.0, 8.0];
        let y: Vec<f64> = x.iter().map(|v: &f64| 3.0 * v.powf(-1.5)).collect();
        assert_relative_eq!(log_log_slope(&x, &y), -1.5, max_relative = 1e-12);
    }

    proptest! {
        #[test]
        fn merge_matches_sequential(xs in proptest::collection::vec(-1e3f64..1e3, 2..40), split in 0usize..40) {
            let split = split.min(xs.len());
            let whole: Accumulator = xs.iter().copied().collect();
            let a: Accumulator = xs[..split].iter().copied().collect();
            let b: Accumulator = xs[split..].iter().copied().collect();
            let merged = a.merge(&b).stats();
            let w = whole.stats();
            prop_assert_eq!(merged.count, w.count);
            prop_assert!((merged.mean - w.mean).abs() <= 1e-9 * (1.0 + w.mean.abs()));
            prop_assert!((merged.variance - w.variance).abs() <= 1e-9 * (1.0 + w.variance));
        }
    }
}
