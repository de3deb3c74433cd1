use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::arith::{GaussianRational, Rational};
use crate::error::{Error, Result};
use crate::moebius::{
    region_subset, region_symmetric_about_origin, regions_disjoint, GenDisk, Matrix2, Openness, Region, SignPolicy,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Flavor {
    Mu2,
    MuI,
    Custom,
}

impl Flavor {
    pub fn name(self) -> &'static str {
        match self {
            Flavor::Mu2 => "mu2",
            Flavor::MuI => "mui",
            Flavor::Custom => "custom",
        }
    }
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl core::str::FromStr for Flavor {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "mu2" => Ok(Flavor::Mu2),
            "mui" => Ok(Flavor::MuI),
            "custom" => Ok(Flavor::Custom),
            _ => Err(Error::Parse(s.to_string())),
        }
    }
}

/// Half-plane constraint `Re lambda > bound` (or `>=`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamDomain {
    pub re_bound: Rational,
    pub inclusive: bool,
}

impl ParamDomain {
    pub fn re_greater(bound: Rational) -> Self {
        ParamDomain { re_bound: bound, inclusive: false }
    }

    pub fn re_at_least(bound: Rational) -> Self {
        ParamDomain { re_bound: bound, inclusive: true }
    }

    pub fn contains(&self, lambda: &GaussianRational) -> bool {
        if self.inclusive {
            lambda.re >= self.re_bound
        } else {
            lambda.re > self.re_bound
        }
    }
}

impl fmt::Display for ParamDomain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rel = if self.inclusive { ">=" } else { ">" };
        write!(f, "Re lambda {rel} {}", self.re_bound)
    }
}

/// One named check with its outcome.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl CheckResult {
    pub fn new(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Self {
        CheckResult { name: name.into(), pass, detail: detail.into() }
    }
}

/// Regions `X1, X2` (open, disjoint) and `K1 ⊆ X1`, `K2 ⊆ X2` (closed).
#[derive(Clone, Debug)]
pub struct PingPongTable {
    pub x1: Region,
    pub x2: Region,
    pub k1: Region,
    pub k2: Region,
    pub domain: ParamDomain,
    pub flavor: Flavor,
    symmetric: bool,
    invariants: Vec<CheckResult>,
}

fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n, d).expect("nonzero denominator")
}

fn gi(re: i64, im: i64) -> GaussianRational {
    GaussianRational::new(Rational::from(re), Rational::from(im))
}

impl PingPongTable {
    /// Builds a table and certifies its invariants; fails if any does not
    /// hold.
    pub fn custom(
        x1: Region,
        x2: Region,
        k1: Region,
        k2: Region,
        domain: ParamDomain,
        policy: SignPolicy,
    ) -> Result<Self> {
        Self::build(x1, x2, k1, k2, domain, Flavor::Custom, policy)
    }

    fn build(
        x1: Region,
        x2: Region,
        k1: Region,
        k2: Region,
        domain: ParamDomain,
        flavor: Flavor,
        policy: SignPolicy,
    ) -> Result<Self> {
        let mut invariants = Vec::new();
        let open_x = x1.openness() == Openness::Open && x2.openness() == Openness::Open;
        invariants.push(CheckResult::new("X regions open", open_x, ""));
        let closed_k = k1.openness() == Openness::Closed && k2.openness() == Openness::Closed;
        invariants.push(CheckResult::new("K regions closed", closed_k, ""));
        if !open_x || !closed_k {
            return Err(Error::invalid("table needs open X regions and closed K regions"));
        }
        let disjoint = regions_disjoint(&x1, &x2);
        invariants.push(CheckResult::new("X1 ∩ X2 = ∅", disjoint, ""));
        let in1 = region_subset(&k1, &x1, policy)?;
        invariants.push(CheckResult::new("K1 ⊆ X1", in1, ""));
        let in2 = region_subset(&k2, &x2, policy)?;
        invariants.push(CheckResult::new("K2 ⊆ X2", in2, ""));
        if let Some(bad) = invariants.iter().find(|c| !c.pass) {
            return Err(Error::invalid(format!("table invariant fails: {}", bad.name)));
        }
        let symmetric = [&x1, &x2, &k1, &k2].into_iter().all(region_symmetric_about_origin);
        Ok(PingPongTable { x1, x2, k1, k2, domain, flavor, symmetric, invariants })
    }

    /// `X1 = {|z| < 1}`, `X2 = {|z| > 1} ∪ {∞}`, `K1 = {|z| <= 1/2}`,
    /// `K2 = {|z| >= 5/4} ∪ {∞}`, for `Re lambda > 3/2`.
    pub fn mu2() -> Self {
        let zero = GaussianRational::zero();
        let x1 = Region::single("X1", GenDisk::disk(&zero, &Rational::one(), Openness::Open).expect("valid"));
        let x2 = Region::single("X2", GenDisk::exterior(&zero, &Rational::one(), Openness::Open).expect("valid"));
        let k1 = Region::single("K1", GenDisk::disk(&zero, &rat(1, 2), Openness::Closed).expect("valid"));
        let k2 = Region::single("K2", GenDisk::exterior(&zero, &rat(5, 4), Openness::Closed).expect("valid"));
        Self::build(x1, x2, k1, k2, ParamDomain::re_greater(rat(3, 2)), Flavor::Mu2, SignPolicy::Filtered)
            .expect("built-in table certifies")
    }

    /// Three unit balls at `i, 0, -i` against `{|Re z| > 1} ∪ {|z| > 2} ∪ {∞}`,
    /// with `K2 = {|Re z| >= 5/4} ∪ {|z| >= 9/4} ∪ {∞}` and
    /// `K1 = J^-1({|Im z| >= 5/4} ∪ {|z| >= 9/4} ∪ {∞})`.
    pub fn mui() -> Self {
        let one = Rational::one();
        let o = Openness::Open;
        let c = Openness::Closed;
        let x1 = Region::new(
            "X1",
            vec![
                GenDisk::disk(&gi(0, 1), &one, o).expect("valid"),
                GenDisk::disk(&gi(0, 0), &one, o).expect("valid"),
                GenDisk::disk(&gi(0, -1), &one, o).expect("valid"),
            ],
        )
        .expect("valid");
        let x2 = Region::new(
            "X2",
            vec![
                GenDisk::re_greater(&one, o),
                GenDisk::re_less(&-&one, o),
                GenDisk::exterior(&gi(0, 0), &Rational::from(2), o).expect("valid"),
            ],
        )
        .expect("valid");
        let k2 = Region::new(
            "K2",
            vec![
                GenDisk::re_greater(&rat(5, 4), c),
                GenDisk::re_less(&rat(-5, 4), c),
                GenDisk::exterior(&gi(0, 0), &rat(9, 4), c).expect("valid"),
            ],
        )
        .expect("valid");
        let k1_primed = Region::new(
            "K1'",
            vec![
                GenDisk::im_greater(&rat(5, 4), c),
                GenDisk::im_less(&rat(-5, 4), c),
                GenDisk::exterior(&gi(0, 0), &rat(9, 4), c).expect("valid"),
            ],
        )
        .expect("valid");
        let k1 = k1_primed.image(&Matrix2::j().inverse()).with_label("K1");
        Self::build(x1, x2, k1, k2, ParamDomain::re_greater(rat(3, 2)), Flavor::MuI, SignPolicy::Filtered)
            .expect("built-in table certifies")
    }

    pub fn by_flavor(flavor: Flavor) -> Result<Self> {
        match flavor {
            Flavor::Mu2 => Ok(Self::mu2()),
            Flavor::MuI => Ok(Self::mui()),
            Flavor::Custom => Err(Error::invalid("custom tables are built from regions")),
        }
    }

    /// All four regions are invariant under `z -> -z`.
    pub fn is_symmetric(&self) -> bool {
        self.symmetric
    }

    /// Construction-time checks (all passing).
    pub fn invariants(&self) -> &[CheckResult] {
        &self.invariants
    }

    /// The `mu` the flavor is built for, if fixed.
    pub fn fixed_mu(&self) -> Option<GaussianRational> {
        match self.flavor {
            Flavor::Mu2 => Some(GaussianRational::from_int(2)),
            Flavor::MuI => Some(GaussianRational::i()),
            Flavor::Custom => None,
        }
    }

    /// Rejects parameters outside the table's scope.
    pub fn check_domain(&self, lambda: &GaussianRational, mu: &GaussianRational) -> Result<()> {
        if mu.is_zero() || lambda.is_zero() {
            return Err(Error::invalid("parameters must be nonzero"));
        }
        if let Some(m) = self.fixed_mu() {
            if *mu != m {
                return Err(Error::DomainGate(format!("table {} needs mu = {m}, got {mu}", self.flavor)));
            }
        }
        if !self.domain.contains(lambda) {
            return Err(Error::DomainGate(format!("lambda = {lambda} violates {}", self.domain)));
        }
        Ok(())
    }

    pub fn regions(&self) -> [&Region; 4] {
        [&self.x1, &self.x2, &self.k1, &self.k2]
    }
}
