/// Smooth cutoff `φ^M`: 1 on `|x| <= M/2`, 0 on `|x| >= M`, C^∞ in between.
///
/// The transition is the standard `e^{-1/t}` partition of unity on `[M/2, M]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TruncationGate {
    level: f64,
}

fn bump(t: f64) -> f64 {
    if t <= 0.0 {
        0.0
    } else {
        (-1.0 / t).exp()
    }
}

impl TruncationGate {
    pub fn new(level: f64) -> Self {
        Self { level }
    }

    pub fn level(&self) -> f64 {
        self.level
    }

    pub fn eval(&self, x: f64) -> f64 {
        let half = 0.5 * self.level;
        let a = x.abs();
        if a <= half {
            return 1.0;
        }
        if a >= self.level {
            return 0.0;
        }
        let s = (a - half) / half;
        let on = bump(1.0 - s);
        on / (on + bump(s))
    }
}
