use std::fmt;

/// Degree of a coefficient sequence before trailing zeros are trimmed,
/// compared against the a-priori bound for that quantity.
///
/// `natural` is the degree implied by the operand lengths (sum of degrees
/// for a convolution, maximum for a padded sum); `trimmed` is the degree
/// actually left after dropping trailing zero coefficients. `None` means the
/// zero sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CapacityCheck {
    pub stage: usize,
    pub quantity: &'static str,
    pub natural: Option<usize>,
    pub trimmed: Option<usize>,
    pub capacity: usize,
}

impl CapacityCheck {
    pub fn holds(&self) -> bool {
        self.natural.is_none_or(|d| d <= self.capacity)
    }
}

impl fmt::Display for CapacityCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |d: Option<usize>| d.map_or_else(|| "-".to_string(), |d| d.to_string());
        write!(
            f,
            "stage {} {}: degree {} (trimmed {}) against capacity {}",
            self.stage,
            self.quantity,
            show(self.natural),
            show(self.trimmed),
            self.capacity
        )
    }
}

/// Degree of a convolution of the given operands.
pub(crate) fn conv(ds: &[Option<usize>]) -> Option<usize> {
    ds.iter().try_fold(0usize, |acc, d| d.map(|d| acc + d))
}

/// Degree of a zero-padded sum of the given operands.
pub(crate) fn sum(ds: &[Option<usize>]) -> Option<usize> {
    ds.iter().flatten().copied().max()
}

#[derive(Default, Debug)]
pub(crate) struct CapacityLog {
    pub(crate) checks: Vec<CapacityCheck>,
}

impl CapacityLog {
    pub(crate) fn record(&mut self, stage: usize, quantity: &'static str, natural: Option<usize>, trimmed: Option<usize>, capacity: usize) {
        self.checks.push(CapacityCheck {
            stage,
            quantity,
            natural,
            trimmed,
            capacity,
        });
    }
}
