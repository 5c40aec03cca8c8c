/// Classification of a checked inequality `lhs ≤ rhs`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Status {
    Holds,
    Fails,
    Inconclusive,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Holds => "holds",
            Status::Fails => "fails",
            Status::Inconclusive => "inconclusive",
        }
    }
}

impl core::fmt::Display for Status {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One evaluated inequality.
///
/// `status` is `Holds` iff `margin > numeric_error`, `Fails` iff
/// `margin < -numeric_error`, and `Inconclusive` otherwise. The single
/// exception is a comparison decided in exact arithmetic
/// ([`Verdict::exact`]): there `numeric_error` is zero and an exact tie
/// counts as `Holds`, since the inequality is non-strict.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Verdict {
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    pub numeric_error: f64,
    pub status: Status,
    exact: bool,
}

fn classify(margin: f64, numeric_error: f64) -> Status {
    if margin.is_nan() || numeric_error.is_nan() {
        Status::Inconclusive
    } else if margin > numeric_error {
        Status::Holds
    } else if margin < -numeric_error {
        Status::Fails
    } else {
        Status::Inconclusive
    }
}

impl Verdict {
    /// `lhs ≤ rhs` with `margin = rhs - lhs`.
    pub fn new(lhs: f64, rhs: f64, numeric_error: f64) -> Self {
        Self::with_margin(lhs, rhs, rhs - lhs, numeric_error)
    }

    pub fn with_margin(lhs: f64, rhs: f64, margin: f64, numeric_error: f64) -> Self {
        let numeric_error = libm::fabs(numeric_error);
        Verdict {
            lhs,
            rhs,
            margin,
            numeric_error,
            status: classify(margin, numeric_error),
            exact: false,
        }
    }

    /// A comparison whose sign was decided exactly; `lhs` and `rhs` are the
    /// nearest floating-point representatives.
    pub fn exact(lhs: f64, rhs: f64, ordering: core::cmp::Ordering) -> Self {
        use core::cmp::Ordering::*;
        let (margin, status) = match ordering {
            Less => ((rhs - lhs).max(f64::MIN_POSITIVE), Status::Holds),
            Equal => (0.0, Status::Holds),
            Greater => ((rhs - lhs).min(-f64::MIN_POSITIVE), Status::Fails),
        };
        Verdict {
            lhs,
            rhs,
            margin,
            numeric_error: 0.0,
            status,
            exact: true,
        }
    }

    /// Agreement check `|lhs - rhs| ≤ agreement`; the margin is the unused
    /// slack `agreement - |lhs - rhs|`.
    pub fn identity(lhs: f64, rhs: f64, agreement: f64, numeric_error: f64) -> Self {
        let deviation = libm::fabs(lhs - rhs);
        let numeric_error = libm::fabs(numeric_error);
        let margin = agreement - deviation;
        Verdict {
            lhs,
            rhs,
            margin,
            numeric_error,
            status: classify(margin, numeric_error),
            exact: false,
        }
    }

    pub fn holds(&self) -> bool {
        self.status == Status::Holds
    }

    pub fn fails(&self) -> bool {
        self.status == Status::Fails
    }

    pub fn is_inconclusive(&self) -> bool {
        self.status == Status::Inconclusive
    }

    pub fn is_exact(&self) -> bool {
        self.exact
    }

    /// True for an exactly decided tie.
    pub fn is_equality(&self) -> bool {
        self.exact && self.margin == 0.0
    }

    pub fn deviation(&self) -> f64 {
        libm::fabs(self.lhs - self.rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::cmp::Ordering;

    #[test]
    fn trichotomy() {
        assert_eq!(Verdict::new(1.0, 2.0, 0.5).status, Status::Holds);
        assert_eq!(Verdict::new(2.0, 1.0, 0.5).status, Status::Fails);
        assert_eq!(Verdict::new(1.0, 1.2, 0.5).status, Status::Inconclusive);
        assert_eq!(Verdict::new(1.0, 1.0, 0.0).status, Status::Inconclusive);
        assert_eq!(
            Verdict::new(1.0, f64::NAN, 0.0).status,
            Status::Inconclusive
        );
        assert_eq!(
            Verdict::new(1.0, 3.0, f64::INFINITY).status,
            Status::Inconclusive
        );
    }

    #[test]
    fn exact_ties_hold() {
        let v = Verdict::exact(1.0, 1.0, Ordering::Equal);
        assert!(v.holds() && v.is_equality());
        let v = Verdict::exact(1.0, 1.0, Ordering::Greater);
        assert!(v.fails() && !v.is_equality());
    }

    #[test]
    fn identity_slack() {
        let v = Verdict::identity(1.0, 1.0 + 1e-12, 1e-10, 1e-15);
        assert!(v.holds());
        assert!((v.deviation() - 1e-12).abs() < 1e-15);
        assert!(Verdict::identity(1.0, 1.1, 1e-10, 0.0).fails());
    }
}
