use crate::poly::Poly;

/// Outcome of comparing two sides of an identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub pass: bool,
    /// `lhs - rhs`; zero exactly when the check passes.
    pub witness: Poly,
}

impl Check {
    pub fn compare(lhs: &Poly, rhs: &Poly) -> Check {
        let witness = lhs - rhs;
        Check { pass: witness.is_zero(), witness }
    }

    pub fn ok() -> Check {
        Check { pass: true, witness: Poly::zero() }
    }

    pub fn fail(witness: Poly) -> Check {
        Check { pass: false, witness }
    }

    /// Combines several checks; the first failing witness is kept.
    pub fn all(checks: impl IntoIterator<Item = Check>) -> Check {
        for c in checks {
            if !c.pass {
                return c;
            }
        }
        Check::ok()
    }
}
