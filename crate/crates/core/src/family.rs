use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::characters::{CaseKind, SpaceKind};
use crate::error::{Error, Result};

/// The random-matrix or symmetric-space models with built-in tables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    /// Unitary symplectic group `USp(2n)`, trace of the defining representation.
    Usp,
    /// Special orthogonal group `SO(2n+1)`.
    SoOdd,
    /// Full orthogonal group `O(2n)`.
    OEven,
    /// Unitary group `U(n)`, `W = (Tr g + conj) / sqrt 2`.
    U,
    /// Unit sphere in `R^n`, `W = sqrt(n) x_n`.
    Sphere,
    /// Circular orthogonal ensemble of size `n`.
    Coe,
    /// Circular symplectic ensemble with `n` distinct eigenvalues.
    Cse,
}

impl Family {
    pub const ALL: [Family; 7] = [
        Family::Usp,
        Family::SoOdd,
        Family::OEven,
        Family::U,
        Family::Sphere,
        Family::Coe,
        Family::Cse,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Usp => "usp",
            Family::SoOdd => "so-odd",
            Family::OEven => "o-even",
            Family::U => "u",
            Family::Sphere => "sphere",
            Family::Coe => "coe",
            Family::Cse => "cse",
        }
    }

    pub fn min_n(self) -> usize {
        2
    }

    pub fn check_n(self, n: usize) -> Result<()> {
        if n < self.min_n() {
            Err(Error::SizeTooSmall { min: self.min_n(), got: n })
        } else {
            Ok(())
        }
    }

    pub fn case_kind(self) -> CaseKind {
        match self {
            Family::Usp | Family::SoOdd | Family::OEven | Family::Sphere => CaseKind::Real,
            Family::U | Family::Coe | Family::Cse => CaseKind::Complex,
        }
    }

    pub fn space_kind(self) -> SpaceKind {
        match self {
            Family::Usp | Family::SoOdd | Family::OEven | Family::U => SpaceKind::Group,
            Family::Sphere | Family::Coe | Family::Cse => SpaceKind::SymmetricSpace,
        }
    }

    /// Dimension of the matrices the sampler produces.
    pub fn matrix_dim(self, n: usize) -> usize {
        match self {
            Family::Usp | Family::OEven | Family::Cse => 2 * n,
            Family::SoOdd => 2 * n + 1,
            Family::U | Family::Coe | Family::Sphere => n,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "usp" | "sp" => Ok(Family::Usp),
            "so-odd" | "so" => Ok(Family::SoOdd),
            "o-even" | "o" => Ok(Family::OEven),
            "u" | "cue" => Ok(Family::U),
            "sphere" => Ok(Family::Sphere),
            "coe" => Ok(Family::Coe),
            "cse" => Ok(Family::Cse),
            other => Err(Error::InvalidParameter(format!("unknown family '{other}'"))),
        }
    }
}

/// The one-parameter conjugacy class (or double coset) used for the
/// exchangeable pair.
///
/// For the matrix families `theta` is the rotation angle: eigenvalues
/// `(1, ..., 1, e^{i theta}, e^{-i theta})`. For the sphere the class is
/// labelled by the last coordinate `x = cos(theta)` of `alpha e_n`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassParameter {
    theta: f64,
}

impl ClassParameter {
    /// Smallest admissible value of `1 - cos(theta)`.
    const MIN_DEFICIT: f64 = 1e-300;

    pub fn new(theta: f64) -> Result<Self> {
        if !theta.is_finite() {
            return Err(Error::InvalidParameter(format!("theta = {theta}")));
        }
        // classes are invariant under theta -> -theta and theta -> theta + 2 pi
        let reduced = theta.abs().rem_euclid(std::f64::consts::TAU);
        let param = ClassParameter { theta: reduced.min(std::f64::consts::TAU - reduced) };
        if param.one_minus_cos() < Self::MIN_DEFICIT {
            return Err(Error::IdentityClass(theta));
        }
        Ok(param)
    }

    /// Sphere double coset with last coordinate `x`.
    pub fn from_sphere_coordinate(x: f64) -> Result<Self> {
        if !(-1.0..1.0).contains(&x) {
            if x == 1.0 {
                return Err(Error::IdentityClass(x));
            }
            return Err(Error::InvalidParameter(format!("sphere coordinate x = {x} not in [-1, 1)")));
        }
        Self::new(x.acos())
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// `1 - cos(theta)`, evaluated without cancellation.
    pub fn one_minus_cos(&self) -> f64 {
        let s = (0.5 * self.theta).sin();
        2.0 * s * s
    }

    /// `1 - cos(2 theta)`.
    pub fn one_minus_cos_double(&self) -> f64 {
        let s = self.theta.sin();
        2.0 * s * s
    }

    pub fn sphere_coordinate(&self) -> f64 {
        self.theta.cos()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_round_trip() {
        for f in Family::ALL {
            assert_eq!(f.name().parse::<Family>().unwrap(), f);
        }
        assert!("gl".parse::<Family>().is_err());
    }

    #[test]
    fn identity_class_rejected() {
        assert!(matches!(ClassParameter::new(0.0), Err(Error::IdentityClass(_))));
        assert!(ClassParameter::new(2.0 * std::f64::consts::PI).is_err());
        assert!(ClassParameter::new(f64::NAN).is_err());
        assert!(ClassParameter::from_sphere_coordinate(1.0).is_err());
        assert!(ClassParameter::from_sphere_coordinate(1.5).is_err());
    }

    #[test]
    fn deficits_are_accurate_for_tiny_angles() {
        let p = ClassParameter::new(1e-6).unwrap();
        assert!((p.one_minus_cos() / 5e-13 - 1.0).abs() < 1e-10);
        assert!((p.one_minus_cos_double() / 2e-12 - 1.0).abs() < 1e-10);
    }

    #[test]
    fn sphere_coordinate_round_trip() {
        let p = ClassParameter::from_sphere_coordinate(0.9).unwrap();
        assert!((p.sphere_coordinate() - 0.9).abs() < 1e-15);
        assert!((p.one_minus_cos() - 0.1).abs() < 1e-15);
    }
}
