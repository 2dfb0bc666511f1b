//! WZ pairs: exact verification, certificate search, flawlessness,
//! constants and transformations.

use num_traits::{One, Zero};

use crate::exact::{FactoredPoly, FactoredRat, RatFunc, Rational};
use crate::hyperterm::{Dir, HyperTerm};
use crate::{Error, Poly2, Result};

pub mod constant;
pub mod flawless;
pub mod mate;
pub mod probes;
pub mod transform;

pub use crate::hyperterm::{ClosedForm, ClosedKind};
pub use constant::{
    constant_via_numeric, constant_via_termination, pair_constant, pair_series, pair_sum, recognize_constant, search_constant, termination_value,
    ConstantValue,
};
pub use flawless::{check_flawless, FlawlessReport, FlawlessStatus};
pub use mate::{find_mate, find_mate_with, find_s, Certificate, MateOptions};
pub use probes::{carlson_growth_probe, constancy_check, fit_growth, periodicity_check, theorem2_balance, Theorem2Report};
pub use transform::{format_map, parse_map, transform_pair, MateSource, PairMap};

/// `F = U S z^n y^k` and `G = U R z^n y^k`.
#[derive(Clone, Debug, PartialEq)]
pub struct WZPair {
    pub name: String,
    pub source: String,
    pub u: HyperTerm,
    pub s: RatFunc,
    pub r: Option<RatFunc>,
    pub z: Rational,
    pub y: Rational,
}

impl WZPair {
    pub fn new(name: &str, u: HyperTerm, s: RatFunc, r: Option<RatFunc>, z: Rational, y: Rational) -> Self {
        WZPair { name: name.to_string(), source: String::new(), u, s, r, z, y }
    }

    /// `U z^n y^k`.
    pub fn kernel(&self) -> HyperTerm {
        let mut t = self.u.clone();
        t.z = &t.z * &self.z;
        t.y = &t.y * &self.y;
        t
    }

    pub fn f_term(&self) -> HyperTerm {
        self.kernel().with_pre(&self.s)
    }

    pub fn g_term(&self) -> Result<HyperTerm> {
        Ok(self.kernel().with_pre(self.r.as_ref().ok_or(Error::MissingCertificate)?))
    }

    pub fn quotients(&self) -> Result<(FactoredRat, FactoredRat)> {
        let k = self.kernel();
        Ok((k.shift_quotient_factored(Dir::N)?, k.shift_quotient_factored(Dir::K)?))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerifyReport {
    pub verified: bool,
    /// Numerator of `Qn S(n+1) - S - Qk R(k+1) + R` over a common denominator.
    pub residual: Poly2,
}

/// Numerator of `sum terms` over the lcm of their denominators.
pub(crate) fn combine(terms: &[FactoredRat]) -> (Poly2, FactoredPoly) {
    let mut l = FactoredPoly::one();
    for t in terms.iter().filter(|t| !t.is_zero()) {
        l = l.lcm(&t.den.monic());
    }
    let mut acc = Poly2::zero();
    for t in terms.iter().filter(|t| !t.is_zero()) {
        let cof = l.div_exact(&t.den).expect("lcm multiple");
        acc = &acc + &t.num.mul(&cof).expand();
    }
    (acc, l)
}

fn one_step() -> (Rational, Rational) {
    (Rational::one(), Rational::zero())
}

/// Exact check of `Qn S(n+1,k) - S(n,k) = Qk R(n,k+1) - R(n,k)`.
pub fn verify_pair(p: &WZPair) -> Result<VerifyReport> {
    let r = p.r.as_ref().ok_or(Error::MissingCertificate)?;
    let (qn, qk) = p.quotients()?;
    let s = FactoredRat::from_ratfunc(&p.s);
    let rr = FactoredRat::from_ratfunc(r);
    let (dn, z0) = one_step();
    let terms = [
        qn.mul(&s.shift(&dn, &z0)),
        s.neg(),
        qk.mul(&rr.shift(&z0, &dn)).neg(),
        rr,
    ];
    let (residual, _) = combine(&terms);
    Ok(VerifyReport { verified: residual.is_zero(), residual })
}

/// The right-hand side `Qn S(n+1) - S` of the pair identity.
pub(crate) fn s_side(qn: &FactoredRat, s: &RatFunc) -> FactoredRat {
    let s = FactoredRat::from_ratfunc(s);
    let (one, zero) = one_step();
    qn.mul(&s.shift(&one, &zero)).sub(&s)
}

pub(crate) fn r_side(qk: &FactoredRat, r: &RatFunc) -> FactoredRat {
    let r = FactoredRat::from_ratfunc(r);
    let (one, zero) = one_step();
    qk.mul(&r.shift(&zero, &one)).sub(&r)
}
