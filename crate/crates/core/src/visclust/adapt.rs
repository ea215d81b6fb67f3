/// Iterations between two updates of the scale factor.
pub const ADAPT_WINDOW: usize = 250;
/// Fraction of a window that must agree before the scale moves.
pub const ADAPT_MAJORITY: f64 = 0.8;
pub const SCALE_MIN: f64 = 0.1;
pub const SCALE_MAX: f64 = 10.0;

/// How one projection's component count compared with the target.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    TooFew,
    Matched,
    TooMany,
}

impl Outcome {
    pub fn classify(found: usize, wanted: usize) -> Self {
        match found.cmp(&wanted) {
            std::cmp::Ordering::Less => Outcome::TooFew,
            std::cmp::Ordering::Equal => Outcome::Matched,
            std::cmp::Ordering::Greater => Outcome::TooMany,
        }
    }
}

/// Raise `s` by a quarter when most of the window found too few clusters,
/// lower it by a quarter when most found too many. Clamped to `[0.1, 10]`.
pub fn adapt_scale(history: &[Outcome], s: f64) -> f64 {
    if history.is_empty() {
        return s;
    }
    let n = history.len() as f64;
    let few = history.iter().filter(|&&o| o == Outcome::TooFew).count() as f64;
    let many = history.iter().filter(|&&o| o == Outcome::TooMany).count() as f64;
    let next = if few > ADAPT_MAJORITY * n {
        s * 1.25
    } else if many > ADAPT_MAJORITY * n {
        s * 0.75
    } else {
        s
    };
    next.clamp(SCALE_MIN, SCALE_MAX)
}
