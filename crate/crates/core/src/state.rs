use std::fmt;

/// Radial and orbital quantum numbers of a bound state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuantumState {
    n: u32,
    l: u32,
}

impl QuantumState {
    pub fn new(n: u32, l: u32) -> Self {
        Self { n, l }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn l(&self) -> u32 {
        self.l
    }

    /// Zero multiplicity at the origin in the classical limit: radial
    /// nodes plus the `l + 1` from the regular `r^(l+1)` behaviour.
    pub fn multiplicity(&self) -> u32 {
        self.n + self.l + 1
    }

    pub(crate) fn centrifugal(&self) -> u64 {
        let l = u64::from(self.l);
        l * (l + 1)
    }
}

impl fmt::Display for QuantumState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(n={}, l={})", self.n, self.l)
    }
}
