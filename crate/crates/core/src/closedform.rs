//! Closed-form Hilbert-Kunz values for irreducible plane cubics and the
//! Cayley cubic surface, their reference equations, and an engine-vs-formula
//! verifier.

use std::fmt;
use std::str::FromStr;

use num_traits::ToPrimitive;

use crate::error::{precondition, Error, Result};
use crate::field::PrimeField;
use crate::poly::MultiPoly;
use crate::quotient::{hk_profile_with, EngineOptions, HKProfile};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CubicFamily {
    Cuspidal,
    Nodal,
    EllipticOdd,
    EllipticChar2J0,
    EllipticChar2Jnz,
    Cayley,
}

impl CubicFamily {
    pub const ALL: [CubicFamily; 6] = [
        CubicFamily::Cuspidal,
        CubicFamily::Nodal,
        CubicFamily::EllipticOdd,
        CubicFamily::EllipticChar2J0,
        CubicFamily::EllipticChar2Jnz,
        CubicFamily::Cayley,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CubicFamily::Cuspidal => "cuspidal",
            CubicFamily::Nodal => "nodal",
            CubicFamily::EllipticOdd => "elliptic_odd",
            CubicFamily::EllipticChar2J0 => "elliptic_char2_j0",
            CubicFamily::EllipticChar2Jnz => "elliptic_char2_jnz",
            CubicFamily::Cayley => "cayley",
        }
    }

    pub fn variables(self) -> &'static [&'static str] {
        match self {
            CubicFamily::Cayley => &["x", "y", "z", "w"],
            _ => &["x", "y", "z"],
        }
    }

    /// Whether the closed form holds for every `q`, not only powers of `p`.
    pub fn holds_for_all_q(self) -> bool {
        matches!(self, CubicFamily::Cuspidal | CubicFamily::Cayley)
    }

    pub fn check_characteristic(self, p: u64) -> Result<()> {
        match self {
            CubicFamily::EllipticOdd if p == 2 => {
                Err(Error::CharacteristicMismatch("elliptic_odd needs an odd prime".into()))
            }
            CubicFamily::EllipticChar2J0 | CubicFamily::EllipticChar2Jnz if p != 2 => {
                Err(Error::CharacteristicMismatch(format!("{} needs p = 2", self.as_str())))
            }
            _ => Ok(()),
        }
    }

    /// Equation of the representative used for verification.
    pub fn reference_source(self, p: u64) -> &'static str {
        match self {
            CubicFamily::Cuspidal => "y^2*z - x^3",
            CubicFamily::Nodal if p == 2 => "y^2*z + x*y*z - x^3",
            CubicFamily::Nodal => "y^2*z - x^2*z - x^3",
            CubicFamily::EllipticOdd => "y^2*z - x^3 - x*z^2",
            CubicFamily::EllipticChar2J0 => "y^2*z + y*z^2 - x^3",
            CubicFamily::EllipticChar2Jnz => "y^2*z + x*y*z - x^3 - z^3",
            CubicFamily::Cayley => "x*y*z + x*y*w + x*z*w + y*z*w",
        }
    }
}

impl fmt::Display for CubicFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CubicFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CubicFamily::ALL
            .into_iter()
            .find(|fam| fam.as_str() == s)
            .ok_or_else(|| Error::BadParameter(format!("unknown family `{s}`")))
    }
}

pub fn reference_poly(family: CubicFamily, p: u64) -> Result<MultiPoly> {
    family.check_characteristic(p)?;
    MultiPoly::parse(family.reference_source(p), family.variables(), PrimeField::new(p)?)
}

/// `num / den` where the quotient must be an integer.
fn exact(num: i128, den: i128) -> Result<u64> {
    if num % den != 0 || num < 0 {
        return Err(Error::PreconditionViolated(format!("closed form {num}/{den} is not a nonnegative integer")));
    }
    Ok((num / den) as u64)
}

/// Closed-form HK value. Plane-curve formulas are stated for `q` a power of
/// `p`; the cuspidal one is split by `q mod 3`, which agrees with the split by
/// `p` on such `q` and also covers arbitrary `q`.
pub fn hk_formula(family: CubicFamily, p: u64, q: u64) -> Result<u64> {
    PrimeField::new(p)?;
    family.check_characteristic(p)?;
    precondition(q >= 1, "q must be at least 1")?;
    let q = q as i128;
    let q2 = q * q;
    match family {
        CubicFamily::Cuspidal if q % 3 == 0 => exact(7 * q2, 3),
        CubicFamily::Cuspidal => exact(7 * q2 - 4, 3),
        CubicFamily::Nodal if q % 3 == 2 => exact(7 * q2 - q - 5, 3),
        CubicFamily::Nodal => exact(7 * q2 - q - 3, 3),
        CubicFamily::EllipticOdd => exact(9 * q2 - 5, 4),
        CubicFamily::EllipticChar2J0 => exact(9 * q2, 4),
        CubicFamily::EllipticChar2Jnz => exact(9 * q2 - 4, 4),
        CubicFamily::Cayley => exact(2 * q2 * q - q, 1),
    }
}

/// Socle degree of the Cayley cubic's quotient.
pub fn cayley_socle(q: u64) -> u64 {
    if q <= 1 {
        0
    } else {
        2 * q - 1
    }
}

/// Default list of `q` to verify up to `qmax`: powers `p^k`, `k >= 1`, for
/// families whose formula is tied to Frobenius powers, else `1..=qmax`.
pub fn default_q_list(family: CubicFamily, p: u64, qmax: u64) -> Vec<u64> {
    if family.holds_for_all_q() {
        return (1..=qmax).collect();
    }
    let mut out = Vec::new();
    let mut q = p;
    while q <= qmax {
        out.push(q);
        q = match q.checked_mul(p) {
            Some(next) => next,
            None => break,
        };
    }
    out
}

fn is_power_of(p: u64, mut q: u64) -> bool {
    while q > 1 && q.is_multiple_of(p) {
        q /= p;
    }
    q == 1
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyRow {
    pub profile: HKProfile,
    pub formula: u64,
    pub matches: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyReport {
    pub family: CubicFamily,
    pub p: u64,
    pub polynomial: String,
    pub rows: Vec<FamilyRow>,
}

impl FamilyReport {
    pub fn all_match(&self) -> bool {
        self.rows.iter().all(|r| r.matches)
    }
}

/// Runs the engine on the family's reference equation for every `q` and
/// compares with [`hk_formula`]. Rows come back sorted by `q`.
pub fn verify_family(family: CubicFamily, p: u64, q_list: &[u64], opts: &EngineOptions) -> Result<FamilyReport> {
    precondition(!q_list.is_empty(), "q list is empty")?;
    let f = reference_poly(family, p)?;
    let mut qs = q_list.to_vec();
    qs.sort_unstable();
    qs.dedup();
    for &q in &qs {
        precondition(q >= 1, "q must be at least 1")?;
        if !family.holds_for_all_q() {
            precondition(is_power_of(p, q), format!("q = {q} is not a power of p = {p}"))?;
        }
    }
    let mut rows = Vec::with_capacity(qs.len());
    for q in qs {
        let profile = hk_profile_with(&f, q, opts)?;
        let formula = hk_formula(family, p, q)?;
        let mut matches = profile.hk_value == formula;
        if family == CubicFamily::Cayley {
            matches &= profile.a_q == cayley_socle(q);
        }
        rows.push(FamilyRow { profile, formula, matches });
    }
    let polynomial = f.display_with(family.variables()).to_string();
    Ok(FamilyReport { family, p, polynomial, rows })
}

/// `hk_formula` minus the smallest value any form of that degree can take.
pub fn excess_over_lower_bound(family: CubicFamily, p: u64, q: u64) -> Result<i128> {
    let n = family.variables().len() as u32 - 1;
    let l = crate::series::lower_bound_l(n, 3, q).to_i128().expect("fits");
    Ok(hk_formula(family, p, q)? as i128 - l)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exec::Execution;
    use crate::quotient::RankStrategy;
    use crate::series::lower_bound_l;
    use num_bigint::BigInt;

    fn opts() -> EngineOptions {
        EngineOptions::new(RankStrategy::Auto, Execution::Sequential)
    }

    #[test]
    fn formula_examples() {
        assert_eq!(hk_formula(CubicFamily::Cuspidal, 3, 9).unwrap(), 189);
        assert_eq!(hk_formula(CubicFamily::Nodal, 7, 7).unwrap(), 111);
        assert_eq!(hk_formula(CubicFamily::EllipticOdd, 5, 25).unwrap(), 1405);
        for p in [2, 3, 5] {
            assert_eq!(hk_formula(CubicFamily::Cayley, p, 2).unwrap(), 14);
        }
    }

    #[test]
    fn characteristic_mismatch() {
        assert!(matches!(hk_formula(CubicFamily::EllipticOdd, 2, 4), Err(Error::CharacteristicMismatch(_))));
        assert!(matches!(hk_formula(CubicFamily::EllipticChar2J0, 3, 3), Err(Error::CharacteristicMismatch(_))));
        assert!(matches!(hk_formula(CubicFamily::Cuspidal, 4, 4), Err(Error::NotPrime(4))));
    }

    #[test]
    fn formulas_are_integral_on_frobenius_powers() {
        for p in [2u64, 3, 5, 7, 11, 13] {
            for fam in CubicFamily::ALL {
                if fam.check_characteristic(p).is_err() {
                    continue;
                }
                for q in default_q_list(fam, p, 20_000).into_iter().filter(|&q| is_power_of(p, q) && q > 1) {
                    hk_formula(fam, p, q).unwrap();
                }
            }
        }
        // the p = 2 elliptic forms are not integral at q = 1
        assert!(hk_formula(CubicFamily::EllipticChar2Jnz, 2, 1).is_err());
    }

    #[test]
    fn minimal_families_meet_the_lower_bound() {
        for q in (1..200u64).step_by(2) {
            assert_eq!(BigInt::from(hk_formula(CubicFamily::EllipticOdd, 3, q).unwrap()), lower_bound_l(2, 3, q));
        }
        for q in 1..200u64 {
            assert_eq!(BigInt::from(hk_formula(CubicFamily::Cayley, 5, q).unwrap()), lower_bound_l(3, 3, q));
        }
        assert!(excess_over_lower_bound(CubicFamily::Cuspidal, 5, 25).unwrap() > 0);
    }

    #[test]
    fn cayley_socle_examples() {
        assert_eq!(cayley_socle(1), 0);
        assert_eq!(cayley_socle(2), 3);
        assert_eq!(cayley_socle(5), 9);
        let f = reference_poly(CubicFamily::Cayley, 3).unwrap();
        for q in [2, 5] {
            assert_eq!(hk_profile_with(&f, q, &opts()).unwrap().a_q, cayley_socle(q));
        }
    }

    #[test]
    fn q_lists() {
        assert_eq!(default_q_list(CubicFamily::Nodal, 7, 49), vec![7, 49]);
        assert_eq!(default_q_list(CubicFamily::Cayley, 7, 3), vec![1, 2, 3]);
        assert!(default_q_list(CubicFamily::EllipticOdd, 7, 6).is_empty());
    }

    #[test]
    fn family_names_round_trip() {
        for fam in CubicFamily::ALL {
            assert_eq!(fam.as_str().parse::<CubicFamily>().unwrap(), fam);
        }
        assert!("smooth".parse::<CubicFamily>().is_err());
    }

    #[test]
    fn verify_examples() {
        assert!(verify_family(CubicFamily::EllipticOdd, 5, &[5, 25], &opts()).unwrap().all_match());
        let cayley = verify_family(CubicFamily::Cayley, 3, &(1..=8).collect::<Vec<_>>(), &opts()).unwrap();
        assert_eq!(cayley.rows.len(), 8);
        assert!(cayley.all_match());
        assert!(verify_family(CubicFamily::Nodal, 2, &[2, 4, 8], &opts()).unwrap().all_match());
        assert!(matches!(verify_family(CubicFamily::Nodal, 5, &[4], &opts()), Err(Error::PreconditionViolated(_))));
        assert!(verify_family(CubicFamily::Cuspidal, 5, &[], &opts()).is_err());
    }
}
