use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::error::Error;
use crate::form::ExponentForm;

const FOUR_OVER_PI: f64 = 4.0 / PI;

/// Identifies one of the five supported approximations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MethodId {
    /// `Φ(x) ≈ 1/2 + 1/2·√(1 − exp(−x²(17 + x²)/(26.694 + 2x²)))`.
    NewPhi,
    /// The four-coefficient Φ approximation with a quartic denominator term.
    SE2014Phi,
    /// Winitzki's erf approximation rewritten for Φ.
    WinitzkiPhi,
    /// Winitzki's erf approximation with `a = 0.147`.
    WinitzkiErf,
    /// erf obtained from [`MethodId::NewPhi`] through `erf(x) = 2Φ(x√2) − 1`.
    ErfFromNew,
}

impl MethodId {
    pub const ALL: [MethodId; 5] = [
        MethodId::NewPhi,
        MethodId::SE2014Phi,
        MethodId::WinitzkiPhi,
        MethodId::WinitzkiErf,
        MethodId::ErfFromNew,
    ];

    pub const PHI_METHODS: [MethodId; 3] =
        [MethodId::NewPhi, MethodId::SE2014Phi, MethodId::WinitzkiPhi];

    pub const ERF_METHODS: [MethodId; 2] = [MethodId::WinitzkiErf, MethodId::ErfFromNew];

    pub fn is_phi(self) -> bool {
        matches!(
            self,
            MethodId::NewPhi | MethodId::SE2014Phi | MethodId::WinitzkiPhi
        )
    }

    pub fn is_erf(self) -> bool {
        !self.is_phi()
    }

    /// Lowercase hyphenated name used on the command line.
    pub fn name(self) -> &'static str {
        match self {
            MethodId::NewPhi => "new-phi",
            MethodId::SE2014Phi => "se2014-phi",
            MethodId::WinitzkiPhi => "winitzki-phi",
            MethodId::WinitzkiErf => "winitzki-erf",
            MethodId::ErfFromNew => "erf-from-new",
        }
    }

    /// The exponent coefficients of this method, in the variable `u = x²`.
    ///
    /// `ErfFromNew` has no table of its own: its form is the `NewPhi` form after
    /// substituting `u → 2u`, i.e. `−(34u + 4u²)/(26.694 + 4u)`.
    pub fn form(self) -> ExponentForm {
        match self {
            MethodId::NewPhi => ExponentForm::new(17.0, 1.0, 26.694, 2.0, 0.0),
            MethodId::SE2014Phi => {
                ExponentForm::new(1.2735457, 0.0743968, 2.0, 0.1480931, 0.0002580)
            }
            MethodId::WinitzkiPhi => ExponentForm::new(FOUR_OVER_PI, 0.0735, 2.0, 0.147, 0.0),
            MethodId::WinitzkiErf => ExponentForm::new(FOUR_OVER_PI, 0.147, 1.0, 0.147, 0.0),
            MethodId::ErfFromNew => ExponentForm::new(34.0, 4.0, 26.694, 4.0, 0.0),
        }
    }
}

impl fmt::Display for MethodId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MethodId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        MethodId::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = MethodId::ALL.iter().map(|m| m.name()).collect();
                Error::Usage(format!(
                    "unknown method `{s}`, expected one of {}",
                    names.join(", ")
                ))
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coefficient_table() {
        let f = MethodId::NewPhi.form();
        assert_eq!(
            (f.p1, f.p2, f.q0, f.q1, f.q2),
            (17.0, 1.0, 26.694, 2.0, 0.0)
        );
        let f = MethodId::WinitzkiErf.form();
        assert_eq!(f.p1, 4.0 / std::f64::consts::PI);
        assert_eq!((f.p2, f.q0, f.q1, f.q2), (0.147, 1.0, 0.147, 0.0));
        let f = MethodId::SE2014Phi.form();
        assert_eq!(
            (f.p1, f.p2, f.q0, f.q1, f.q2),
            (1.2735457, 0.0743968, 2.0, 0.1480931, 0.0002580)
        );
        let f = MethodId::WinitzkiPhi.form();
        assert_eq!((f.p2, f.q0, f.q1, f.q2), (0.0735, 2.0, 0.147, 0.0));
    }

    #[test]
    fn every_form_is_valid() {
        for m in MethodId::ALL {
            m.form().validate().unwrap();
        }
    }

    #[test]
    fn names_round_trip() {
        for m in MethodId::ALL {
            assert_eq!(m.name().parse::<MethodId>().unwrap(), m);
        }
        assert!(matches!("phi".parse::<MethodId>(), Err(Error::Usage(_))));
    }

    #[test]
    fn families() {
        assert_eq!(MethodId::ALL.iter().filter(|m| m.is_phi()).count(), 3);
        assert!(MethodId::ERF_METHODS.iter().all(|m| m.is_erf()));
    }
}
