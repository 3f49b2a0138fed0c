//! Numerical invariants of a finite extension of valued fields.
//!
//! Conventions:
//!
//! * A descriptor records degree n, ramification index e, residue degree f,
//!   residue characteristic p, separability of the residue extension, and
//!   the two value groups; `henselian_normal` marks extensions where the
//!   defect theorem applies.
//! * Construction validates everything that must hold for any valued
//!   extension: e equals the actual group index (vL : vK), e·f ≤ n, and
//!   with `henselian_normal` additionally e·f | n with n/(e·f) a power
//!   of p.
//! * Tameness means defectless, p ∤ e, and separable residue extension;
//!   unramified adds e = 1; immediate means e = f = 1.  The pre-tame check
//!   asks that no coset of vL/vK have order divisible by p and that the
//!   residue extension be separable.

use serde::Serialize;
use thiserror::Error;

use crate::arith::is_prime_u64;
use crate::ordgroup::{GroupError, GroupIndex, ValueGroup};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExtError {
    #[error("degree, ramification index and residue degree must be positive")]
    ZeroInvariant,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("claimed ramification index {claimed} but (vL : vK) = {actual}")]
    RamIndexMismatch { claimed: u64, actual: String },
    #[error("e·f = {ef} exceeds the degree {degree}")]
    FundamentalInequalityViolated { ef: u64, degree: u64 },
    #[error("degree {degree} is not e·f·p^k for e·f = {ef}")]
    DefectNotPPower { degree: u64, ef: u64 },
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// Invariants of a finite extension L|K of valued fields.
#[derive(Clone, Debug, PartialEq)]
pub struct ExtensionDescriptor {
    degree: u64,
    ram_index: u64,
    res_degree: u64,
    res_char: u64,
    residue_separable: bool,
    value_group_base: ValueGroup,
    value_group_ext: ValueGroup,
    henselian_normal: bool,
}

/// Serializable snapshot of an extension's invariants.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ExtensionRecord {
    pub degree: u64,
    pub ram_index: u64,
    pub res_degree: u64,
    pub res_char: u64,
    pub residue_separable: bool,
    pub defect: Option<u64>,
    pub value_group_base: String,
    pub value_group_ext: String,
    pub tame: bool,
    pub unramified: bool,
    pub immediate: bool,
}

impl ExtensionDescriptor {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        degree: u64,
        ram_index: u64,
        res_degree: u64,
        res_char: u64,
        residue_separable: bool,
        value_group_base: ValueGroup,
        value_group_ext: ValueGroup,
        henselian_normal: bool,
    ) -> Result<Self, ExtError> {
        if degree == 0 || ram_index == 0 || res_degree == 0 {
            return Err(ExtError::ZeroInvariant);
        }
        if !is_prime_u64(res_char) {
            return Err(ExtError::NotPrime(res_char));
        }
        let actual = value_group_ext.index_over(&value_group_base)?;
        let matches = match &actual {
            GroupIndex::Infinite => false,
            _ => actual.as_u64() == Some(ram_index),
        };
        if !matches {
            return Err(ExtError::RamIndexMismatch {
                claimed: ram_index,
                actual: actual.to_string(),
            });
        }
        let ef = ram_index
            .checked_mul(res_degree)
            .ok_or(ExtError::ZeroInvariant)?;
        if ef > degree {
            return Err(ExtError::FundamentalInequalityViolated { ef, degree });
        }
        if henselian_normal {
            if degree % ef != 0 {
                return Err(ExtError::DefectNotPPower { degree, ef });
            }
            let mut d = degree / ef;
            while d % res_char == 0 {
                d /= res_char;
            }
            if d != 1 {
                return Err(ExtError::DefectNotPPower { degree, ef });
            }
        }
        Ok(ExtensionDescriptor {
            degree,
            ram_index,
            res_degree,
            res_char,
            residue_separable,
            value_group_base,
            value_group_ext,
            henselian_normal,
        })
    }

    pub fn degree(&self) -> u64 {
        self.degree
    }

    pub fn ram_index(&self) -> u64 {
        self.ram_index
    }

    pub fn res_degree(&self) -> u64 {
        self.res_degree
    }

    pub fn res_char(&self) -> u64 {
        self.res_char
    }

    pub fn residue_separable(&self) -> bool {
        self.residue_separable
    }

    pub fn value_group_base(&self) -> &ValueGroup {
        &self.value_group_base
    }

    pub fn value_group_ext(&self) -> &ValueGroup {
        &self.value_group_ext
    }

    pub fn henselian_normal(&self) -> bool {
        self.henselian_normal
    }

    /// degree/(e·f) when that quotient is an integer.
    pub fn defect(&self) -> Option<u64> {
        let ef = self.ram_index * self.res_degree;
        (self.degree % ef == 0).then(|| self.degree / ef)
    }

    pub fn is_defectless(&self) -> bool {
        self.ram_index * self.res_degree == self.degree
    }

    pub fn is_tame(&self) -> bool {
        self.is_defectless()
            && self.ram_index % self.res_char != 0
            && self.residue_separable
    }

    pub fn is_unramified(&self) -> bool {
        self.ram_index == 1 && self.is_defectless() && self.residue_separable
    }

    pub fn is_immediate(&self) -> bool {
        self.ram_index == 1 && self.res_degree == 1
    }

    /// e·f ≤ n; construction enforces it, exposed for property suites.
    pub fn fundamental_inequality_check(&self) -> bool {
        self.ram_index * self.res_degree <= self.degree
    }

    /// No coset of vL/vK has order divisible by p, and the residue
    /// extension is separable.
    pub fn pretame_check(&self) -> Result<bool, ExtError> {
        if !self.residue_separable {
            return Ok(false);
        }
        let reps = self
            .value_group_ext
            .coset_reps(&self.value_group_base)?;
        for rep in &reps {
            match self.value_group_base.order_mod(rep)? {
                GroupIndex::Infinite => return Ok(false),
                ord => {
                    let n = ord.as_u64().expect("finite order");
                    if n % self.res_char == 0 {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    pub fn to_record(&self) -> ExtensionRecord {
        ExtensionRecord {
            degree: self.degree,
            ram_index: self.ram_index,
            res_degree: self.res_degree,
            res_char: self.res_char,
            residue_separable: self.residue_separable,
            defect: self.defect(),
            value_group_base: self.value_group_base.to_string(),
            value_group_ext: self.value_group_ext.to_string(),
            tame: self.is_tame(),
            unramified: self.is_unramified(),
            immediate: self.is_immediate(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn z() -> ValueGroup {
        ValueGroup::standard(1)
    }

    fn frac(d: i64) -> ValueGroup {
        ValueGroup::scaled_integers(rat(1, d))
    }

    #[test]
    fn tame_totally_ramified() {
        let e = ExtensionDescriptor::new(6, 6, 1, 7, true, z(), frac(6), true).unwrap();
        assert!(e.is_tame());
        assert!(e.is_defectless());
        assert!(!e.is_unramified());
        assert!(!e.is_immediate());
        assert_eq!(e.defect(), Some(1));
        assert!(e.fundamental_inequality_check());
    }

    #[test]
    fn immediate_defect_extension() {
        // Degree p with unchanged value group and residue field.
        let hull = ValueGroup::p_divisible(2, &ValueGroup::standard(1)).unwrap();
        let e = ExtensionDescriptor::new(2, 1, 1, 2, true, hull.clone(), hull, true).unwrap();
        assert!(e.is_immediate());
        assert_eq!(e.defect(), Some(2));
        assert!(!e.is_tame());
        assert!(!e.is_defectless());
    }

    #[test]
    fn unramified_inertial() {
        let e = ExtensionDescriptor::new(3, 1, 3, 7, true, z(), z(), true).unwrap();
        assert!(e.is_unramified());
        assert!(e.is_tame());
    }

    #[test]
    fn construction_rejects_bad_invariants() {
        // Claimed e = 2 against an index-6 group pair.
        assert!(matches!(
            ExtensionDescriptor::new(6, 2, 1, 7, true, z(), frac(6), false),
            Err(ExtError::RamIndexMismatch { claimed: 2, .. })
        ));
        // e·f beyond the degree.
        assert!(matches!(
            ExtensionDescriptor::new(4, 6, 1, 7, true, z(), frac(6), false),
            Err(ExtError::FundamentalInequalityViolated { ef: 6, degree: 4 })
        ));
        // Henselian defect that is no p-power: 6/2 = 3 with p = 5.
        assert!(matches!(
            ExtensionDescriptor::new(6, 2, 1, 5, true, z(), frac(2), true),
            Err(ExtError::DefectNotPPower { degree: 6, ef: 2 })
        ));
        // Non-henselian version of the same numbers is allowed.
        let loose = ExtensionDescriptor::new(6, 2, 1, 5, true, z(), frac(2), false).unwrap();
        assert_eq!(loose.defect(), Some(3));
        assert!(matches!(
            ExtensionDescriptor::new(2, 1, 1, 6, true, z(), z(), false),
            Err(ExtError::NotPrime(6))
        ));
        assert!(matches!(
            ExtensionDescriptor::new(0, 1, 1, 2, true, z(), z(), false),
            Err(ExtError::ZeroInvariant)
        ));
    }

    #[test]
    fn pretame_detects_p_torsion() {
        // (1/6)Z over Z has cosets of order 6: 2-torsion and 3-torsion.
        let e2 = ExtensionDescriptor::new(6, 6, 1, 2, true, z(), frac(6), false).unwrap();
        assert!(!e2.pretame_check().unwrap());
        let e5 = ExtensionDescriptor::new(6, 6, 1, 5, true, z(), frac(6), false).unwrap();
        assert!(e5.pretame_check().unwrap());
        // Inseparable residue extension fails regardless of the groups.
        let insep = ExtensionDescriptor::new(6, 6, 1, 5, false, z(), frac(6), false).unwrap();
        assert!(!insep.pretame_check().unwrap());
    }

    #[test]
    fn record_serializes_deterministically() {
        let e = ExtensionDescriptor::new(6, 6, 1, 7, true, z(), frac(6), true).unwrap();
        let json = serde_json::to_string(&e.to_record()).unwrap();
        assert_eq!(
            json,
            "{\"degree\":6,\"ram_index\":6,\"res_degree\":1,\"res_char\":7,\
             \"residue_separable\":true,\"defect\":1,\"value_group_base\":\"Z\",\
             \"value_group_ext\":\"(1/6)Z\",\"tame\":true,\"unramified\":false,\
             \"immediate\":false}"
        );
    }
}
