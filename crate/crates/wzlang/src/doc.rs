//! The parsed form of a `.wz` file and its conversion to engine objects.

use std::fmt;

use num_traits::One;
use wz_core::exact::RatFunc;
use wz_core::hyperterm::{poch_factors, term_from_poch_spec, AffineMap, ClosedForm, HyperTerm, LinForm, PochFactor};
use wz_core::numerics::barnes::BarnesSpec;
use wz_core::numerics::SeriesSpec;
use wz_core::wz::{transform_pair, MateOptions, WZPair};
use wz_core::Rational;

use crate::WzError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DocKind {
    Pair,
    Series,
    Barnes,
}

impl DocKind {
    pub fn as_str(self) -> &'static str {
        match self {
            DocKind::Pair => "pair",
            DocKind::Series => "series",
            DocKind::Barnes => "barnes",
        }
    }
}

impl fmt::Display for DocKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Factor {
    Poch(PochFactor),
    /// `gamma(a + b*n + c*k)^exp`
    Gamma { arg: LinForm, exp: i64 },
}

#[derive(Clone, Debug, PartialEq)]
pub struct WzDocument {
    pub name: String,
    pub kind: DocKind,
    /// Comment lines before the first statement, without the `#`.
    pub header: Vec<String>,
    pub factors: Vec<Factor>,
    pub z: Option<Rational>,
    pub y: Option<Rational>,
    pub s: Option<RatFunc>,
    pub r: Option<RatFunc>,
    pub poly: Option<RatFunc>,
    pub base: Option<Rational>,
    pub delta: Option<Rational>,
    pub start: Option<i64>,
    pub claim: Option<ClosedForm>,
    pub transforms: Vec<AffineMap>,
}

pub enum WzObject {
    Pair(WZPair),
    Series(SeriesSpec),
    Barnes(BarnesSpec),
}

fn one() -> Rational {
    Rational::one()
}

impl WzDocument {
    pub fn new(name: &str, kind: DocKind) -> Self {
        WzDocument {
            name: name.to_string(),
            kind,
            header: Vec::new(),
            factors: Vec::new(),
            z: None,
            y: None,
            s: None,
            r: None,
            poly: None,
            base: None,
            delta: None,
            start: None,
            claim: None,
            transforms: Vec::new(),
        }
    }

    /// Gamma part with the geometric bases `z`, `y`.
    pub fn term(&self) -> Result<HyperTerm, WzError> {
        let poch: Vec<PochFactor> = self
            .factors
            .iter()
            .filter_map(|f| match f {
                Factor::Poch(p) => Some(p.clone()),
                Factor::Gamma { .. } => None,
            })
            .collect();
        let z = self.z.clone().unwrap_or_else(one);
        let y = self.y.clone().unwrap_or_else(one);
        let mut t = term_from_poch_spec(&poch, z, y, RatFunc::one())?;
        for f in &self.factors {
            if let Factor::Gamma { arg, exp } = f {
                t.add_gamma(arg.clone(), *exp);
            }
        }
        Ok(t)
    }

    fn need<T: Clone>(&self, v: &Option<T>, key: &str) -> Result<T, WzError> {
        v.clone().ok_or_else(|| WzError::Missing { kind: self.kind, key: key.to_string() })
    }

    /// The pair before any `transform` directive.
    pub fn raw_pair(&self) -> Result<WZPair, WzError> {
        let mut u = self.term()?;
        let (z, y) = (u.z.clone(), u.y.clone());
        u.z = one();
        u.y = one();
        Ok(WZPair::new(&self.name, u, self.need(&self.s, "S")?, self.r.clone(), z, y))
    }

    /// The pair with every `transform` directive applied in order.
    pub fn to_pair(&self) -> Result<WZPair, WzError> {
        let mut p = self.raw_pair()?;
        for m in &self.transforms {
            p = transform_pair(&p, m, MateOptions::default())?.0;
        }
        Ok(p)
    }

    pub fn to_series(&self) -> Result<SeriesSpec, WzError> {
        let mut s = SeriesSpec::new(self.term()?, self.need(&self.poly, "poly")?);
        s.start = self.start.unwrap_or(0);
        if let Some(c) = &self.claim {
            s.m = c.m;
            s.chi = c.chi;
        }
        s.claimed = self.claim.clone();
        Ok(s)
    }

    pub fn to_barnes(&self) -> Result<BarnesSpec, WzError> {
        let mut t = self.term()?;
        t.z = one();
        t.y = one();
        let mut b = BarnesSpec::new(t, self.need(&self.poly, "poly")?, self.need(&self.base, "base")?, self.start.unwrap_or(0))?;
        if let Some(d) = &self.delta {
            b.delta = d.clone();
            b.check()?;
        }
        Ok(b)
    }

    pub fn object(&self) -> Result<WzObject, WzError> {
        Ok(match self.kind {
            DocKind::Pair => WzObject::Pair(self.to_pair()?),
            DocKind::Series => WzObject::Series(self.to_series()?),
            DocKind::Barnes => WzObject::Barnes(self.to_barnes()?),
        })
    }

    /// Document for a pair; the prefactor of `U` moves into `S` and `R`.
    pub fn from_pair(p: &WZPair) -> Self {
        let mut d = WzDocument::new(&p.name, DocKind::Pair);
        let pre = d.set_term(&p.kernel());
        d.s = Some(p.s.mul(&pre));
        d.r = p.r.as_ref().map(|r| r.mul(&pre));
        d
    }

    pub fn from_series(name: &str, s: &SeriesSpec) -> Self {
        let mut d = WzDocument::new(name, DocKind::Series);
        let pre = d.set_term(&s.term);
        d.poly = Some(s.weight.mul(&pre));
        d.start = (s.start != 0).then_some(s.start);
        d.claim = s.claimed.clone();
        d
    }

    /// Fill factors, `z` and `y` from `t`; returns its prefactor.
    fn set_term(&mut self, t: &HyperTerm) -> RatFunc {
        let mut g = t.clone();
        g.pre = RatFunc::one();
        g.z = one();
        g.y = one();
        g.sign_n = false;
        g.sign_k = false;
        self.factors = match poch_factors(&g) {
            Some(fs) => fs.into_iter().map(Factor::Poch).collect(),
            None => g.gammas.iter().map(|(l, &e)| Factor::Gamma { arg: l.clone(), exp: e }).collect(),
        };
        let flip = |v: &Rational, s: bool| if s { -v.clone() } else { v.clone() };
        let (z, y) = (flip(&t.z, t.sign_n), flip(&t.y, t.sign_k));
        self.z = (!z.is_one()).then_some(z);
        self.y = (!y.is_one()).then_some(y);
        t.pre.clone()
    }
}
