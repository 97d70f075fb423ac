//! Membership certificates for the set of primes `p` such that every value
//! divisible by `p` is divisible by `p²`.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Certified,
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PsReason {
    /// `(Δ/p) = -1`: the quadratic form is anisotropic mod `p`.
    CharacterMinusOne,
    EvenPrime,
    DividesDelta,
    CharacterPlusOne,
    /// `p` divides every coefficient of the form.
    DividesContent,
    RamifiedOrIndexPrime,
    /// `p ∤ disc(h)` and `h` has no root mod `p`: no degree-one prime lies above `p`.
    NoRootModP,
    RootExists,
    /// Exhaustive mod-`p²` scan found no counterexample.
    ExhaustiveScan,
}

impl PsReason {
    pub fn is_certifying(self) -> bool {
        matches!(
            self,
            PsReason::CharacterMinusOne | PsReason::NoRootModP | PsReason::ExhaustiveScan
        )
    }
}

/// The verdict is derived from the reason, so a certificate can only be
/// `Certified` when the reason proves membership.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "CertRepr")]
pub struct PsCertificate {
    pub p: u64,
    pub verdict: Verdict,
    pub reason: PsReason,
}

impl PsCertificate {
    pub fn new(p: u64, reason: PsReason) -> Self {
        let verdict = if reason.is_certifying() {
            Verdict::Certified
        } else {
            Verdict::Unknown
        };
        PsCertificate { p, verdict, reason }
    }

    pub fn is_certified(&self) -> bool {
        self.verdict == Verdict::Certified
    }
}

#[derive(Deserialize)]
struct CertRepr {
    p: u64,
    verdict: Verdict,
    reason: PsReason,
}

impl TryFrom<CertRepr> for PsCertificate {
    type Error = String;

    fn try_from(r: CertRepr) -> Result<Self, String> {
        let c = PsCertificate::new(r.p, r.reason);
        if c.verdict != r.verdict {
            return Err(format!(
                "verdict {:?} inconsistent with reason {:?}",
                r.verdict, r.reason
            ));
        }
        Ok(c)
    }
}

/// Anything that can decide (soundly, possibly incompletely) whether a prime
/// lies in the certificate set of some value set.
pub trait PsCertifier: Sync {
    fn certify(&self, p: u64) -> PsCertificate;
}

impl<T: PsCertifier + ?Sized> PsCertifier for &T {
    fn certify(&self, p: u64) -> PsCertificate {
        (**self).certify(p)
    }
}
