use serde::Serialize;

/// Running statistics behind the stopping time
/// `τ = inf{t : sup_{s<=t} ‖u(s)‖_p + (∫_0^t ‖u(s)‖_{3p}^p ds)^{1/p} >= M}`.
///
/// The time integral uses the left-endpoint rule, so the statistic at a grid
/// time depends only on the path up to that time.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StoppingMonitor {
    p: f64,
    threshold: f64,
    sup_lp: f64,
    integral_3p: f64,
    time: f64,
    fired_at: Option<f64>,
}

impl StoppingMonitor {
    /// Starts the monitor at `t0` with the initial `‖u(t0)‖_p`.
    pub fn new(p: f64, threshold: f64, t0: f64, initial_lp: f64) -> Self {
        let mut m = Self {
            p,
            threshold,
            sup_lp: initial_lp,
            integral_3p: 0.0,
            time: t0,
            fired_at: None,
        };
        m.check();
        m
    }

    /// Advances one step of length `dt` from a state with `‖u‖_{3p}^p =
    /// l3p_pow_start` to a state with `‖u‖_p = lp_end`.
    pub fn advance(&mut self, dt: f64, l3p_pow_start: f64, lp_end: f64) {
        self.integral_3p += dt * l3p_pow_start;
        self.sup_lp = self.sup_lp.max(lp_end);
        self.time += dt;
        self.check();
    }

    fn check(&mut self) {
        if self.fired_at.is_none() && self.statistic() >= self.threshold {
            self.fired_at = Some(self.time);
        }
    }

    pub fn statistic(&self) -> f64 {
        self.sup_lp + self.integral_3p.powf(1.0 / self.p)
    }

    pub fn sup_lp(&self) -> f64 {
        self.sup_lp
    }

    pub fn integral_3p(&self) -> f64 {
        self.integral_3p
    }

    pub fn time(&self) -> f64 {
        self.time
    }

    pub fn threshold(&self) -> f64 {
        self.threshold
    }

    pub fn fired_at(&self) -> Option<f64> {
        self.fired_at
    }

    pub fn has_fired(&self) -> bool {
        self.fired_at.is_some()
    }
}

/// Stopping time of a monitor: the crossing time, or `horizon` if none.
pub fn detect_stop(monitor: &StoppingMonitor, horizon: f64) -> f64 {
    monitor.fired_at().unwrap_or(horizon).min(horizon)
}

/// Stopping time of sampled norms `lp[i] = ‖u(t_i)‖_p`,
/// `l3p_pow[i] = ‖u(t_i)‖_{3p}^p` on the grid `t_i = i·dt`.
pub fn stopping_time_of_samples(lp: &[f64], l3p_pow: &[f64], dt: f64, p: f64, threshold: f64) -> f64 {
    let horizon = dt * lp.len().saturating_sub(1) as f64;
    if lp.is_empty() {
        return 0.0;
    }
    let mut m = StoppingMonitor::new(p, threshold, 0.0, lp[0]);
    for i in 1..lp.len() {
        if m.has_fired() {
            break;
        }
        m.advance(dt, l3p_pow[i - 1], lp[i]);
    }
    detect_stop(&m, horizon)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn never_fires_below_level() {
        let lp = vec![1.0; 11];
        let l3 = vec![1.0; 11];
        assert_eq!(stopping_time_of_samples(&lp, &l3, 0.1, 4.0, 1e9), 1.0);
    }

    #[test]
    fn fires_immediately_above_level() {
        let m = StoppingMonitor::new(4.0, 0.5, 0.0, 1.0);
        assert_eq!(m.fired_at(), Some(0.0));
        assert_eq!(detect_stop(&m, 1.0), 0.0);
    }

    #[test]
    fn engineered_crossing_at_step_17() {
        // constant ‖u‖_p = 1, then a jump to 3 at step 17; M = 2.5
        let dt = 0.01;
        let mut lp = vec![1.0; 40];
        for v in lp.iter_mut().skip(17) {
            *v = 3.0;
        }
        let l3 = vec![0.0; 40];
        let tau = stopping_time_of_samples(&lp, &l3, dt, 4.0, 2.5);
        assert!((tau - 17.0 * dt).abs() < 1e-12);
    }

    #[test]
    fn integral_part_crosses() {
        // sup part 1, integral dt·Σ 16 = 0.16·i; statistic 1 + (0.16 i)^{1/4} >= 2 at i = 7
        let dt = 0.01;
        let lp = vec![1.0; 20];
        let l3 = vec![16.0; 20];
        let tau = stopping_time_of_samples(&lp, &l3, dt, 4.0, 2.0);
        assert!((tau - 0.07).abs() < 1e-12);
    }

    #[test]
    fn statistics_are_monotone() {
        let mut m = StoppingMonitor::new(4.0, 1e9, 0.0, 2.0);
        let mut prev = (m.sup_lp(), m.integral_3p());
        for (l3, lp) in [(1.0, 1.0), (0.5, 3.0), (2.0, 0.1)] {
            m.advance(0.1, l3, lp);
            assert!(m.sup_lp() >= prev.0 && m.integral_3p() >= prev.1);
            prev = (m.sup_lp(), m.integral_3p());
        }
    }
}
