//! Drivers that rebuild the finite complexes and check their homology.

use std::fmt;

use cohodim_homology::builders::{collapse_to_cone, ew_skeleton, join_homology, moore_space, mp_cylinder, pontryagin_stage};
use cohodim_homology::homology::{induced, induced_simplicial, integral_homology, Variance};
use cohodim_homology::{cohomology, AbGroup, Coefficients, HomologyError, SimplicialComplex};
use serde_json::{json, Value as Json};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    Pontryagin,
    MpPair,
    Ew,
    Join,
}

impl Target {
    pub fn name(self) -> &'static str {
        match self {
            Target::Pontryagin => "pontryagin",
            Target::MpPair => "mp-pair",
            Target::Ew => "ew",
            Target::Join => "join",
        }
    }
}

#[derive(Debug, Clone)]
pub struct Params {
    pub p: u64,
    pub q: u64,
    pub n: Option<usize>,
    pub stages: usize,
    pub coeff: Option<Coefficients>,
}

impl Default for Params {
    fn default() -> Self {
        Params { p: 2, q: 3, n: None, stages: 1, coeff: None }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub target: Target,
    pub header: String,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn to_json(&self) -> Json {
        let checks: Vec<Json> =
            self.checks.iter().map(|c| json!({ "name": c.name, "passed": c.passed, "detail": c.detail })).collect();
        json!({ "target": self.target.name(), "header": self.header, "checks": checks, "passed": self.passed() })
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "verify {}", self.header)?;
        for c in &self.checks {
            writeln!(f, "{} {}  [{}]", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail)?;
        }
        writeln!(f, "result: {}", if self.passed() { "pass" } else { "fail" })
    }
}

fn check(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Check {
    Check { name: name.into(), passed, detail: detail.into() }
}

fn prime(v: u64) -> Result<u64, HomologyError> {
    Coefficients::zmod(v)?
        .prime_field()
        .ok_or_else(|| HomologyError::Precondition(format!("{v} is not a prime")))
}

fn usize_of(v: u64) -> Result<usize, HomologyError> {
    usize::try_from(v).map_err(|_| HomologyError::Overflow)
}

fn groups(gs: &[AbGroup]) -> String {
    let parts: Vec<String> = gs.iter().map(|g| g.to_string()).collect();
    format!("[{}]", parts.join(", "))
}

pub fn verify(target: Target, params: &Params) -> Result<Report, HomologyError> {
    match target {
        Target::MpPair => mp_pair(params),
        Target::Pontryagin => pontryagin(params),
        Target::Ew => ew(params),
        Target::Join => join(params),
    }
}

fn mp_pair(params: &Params) -> Result<Report, HomologyError> {
    let p = prime(params.p)?;
    let coeff = params.coeff.unwrap_or(Coefficients::Q);
    let cyl = mp_cylinder(usize_of(p)?)?;
    let rel = cyl.complex.relative_chain_complex(&cyl.source_end)?;
    let hz = integral_homology(&rel);
    let want = vec![AbGroup::zero(), AbGroup::cyclic(&[p as i64]), AbGroup::zero()];
    let mut checks = vec![check("H_*(M_p, dM_p; Z) = [0, Z/p, 0]", hz == want, groups(&hz))];
    if coeff.prime_field() == Some(p) {
        let xi = collapse_to_cone(&cyl)?;
        let r = induced_simplicial(&xi.map, Some((&cyl.source_end, &xi.base)), 2, coeff, Variance::Cohomology)?;
        checks.push(check(format!("xi^*: H^2(D, dD; {coeff}) -> H^2(M_p, dM_p; {coeff}) is an isomorphism"), r.iso(), r.to_string()));
    } else {
        let h2 = cohomology(&rel, coeff).get(2);
        checks.push(check(format!("H^2(M_p, dM_p; {coeff}) = 0"), h2.is_zero(), h2.to_string()));
    }
    Ok(Report { target: Target::MpPair, header: format!("mp-pair (p = {p}, coeff = {coeff})"), checks })
}

fn pontryagin(params: &Params) -> Result<Report, HomologyError> {
    let p = prime(params.p)?;
    let q = prime(params.q)?;
    let tower = pontryagin_stage(usize_of(p)?, params.stages)?;
    let zp = Coefficients::zmod(p)?;
    let mut checks = Vec::new();
    for (j, stage) in tower.stages.iter().enumerate() {
        checks.push(check(format!("L_{} has {} triangles", j + 1, stage.cells(2).len()), true, format!("{} vertices", stage.vertex_count())));
    }
    for (j, bond) in tower.bonds.iter().enumerate() {
        let r = induced_simplicial(bond, None, 2, zp, Variance::Cohomology)?;
        checks.push(check(format!("q^{}_{}^*: H^2(L_{}; Z/{p}) -> H^2(L_{}; Z/{p}) is an isomorphism", j + 2, j + 1, j + 1, j + 2), r.iso(), r.to_string()));
    }
    for (j, stage) in tower.stages.iter().enumerate().skip(1) {
        let c = stage.chain_complex();
        let hq = cohomology(&c, Coefficients::Q).get(2);
        checks.push(check(format!("H^2(L_{}; Q) = 0", j + 1), hq.is_zero(), hq.to_string()));
        if q != p {
            let h = cohomology(&c, Coefficients::zmod(q)?).get(2);
            checks.push(check(format!("H^2(L_{}; Z/{q}) = 0", j + 1), h.is_zero(), h.to_string()));
        }
    }
    Ok(Report { target: Target::Pontryagin, header: format!("pontryagin (p = {p}, stages = {})", params.stages), checks })
}

fn ew(params: &Params) -> Result<Report, HomologyError> {
    let p = prime(params.p)?;
    let n = params.n.unwrap_or(2);
    let k = SimplicialComplex::simplex(n + 1);
    let zp = Coefficients::zmod(p)?;
    let plain = ew_skeleton(&k, Coefficients::Z, n)?;
    let same = plain.chains == plain.skeleton.chain_complex().padded(n);
    let mut checks = vec![check(format!("EW(D^{}, Z, {n}) has the chains of the {n}-skeleton", n + 1), same, format!("ranks {:?}", plain.chains.ranks()))];
    let twisted = ew_skeleton(&k, zp, n)?;
    let hn = integral_homology(&twisted.chains).get(n).cloned().unwrap_or_default();
    checks.push(check(format!("H_{n}(EW(D^{}, Z/{p}, {n}); Z) = Z/{p}", n + 1), hn == AbGroup::cyclic(&[p as i64]), hn.to_string()));
    let r = induced(&twisted.inclusion, n, zp, Variance::Homology)?;
    checks.push(check(format!("inclusion of the {n}-skeleton is injective on H_{n}(-; Z/{p})"), r.injective, r.to_string()));
    Ok(Report { target: Target::Ew, header: format!("ew (p = {p}, n = {n})"), checks })
}

fn join(params: &Params) -> Result<Report, HomologyError> {
    let (p, q) = (params.p, params.q);
    let through = params.n.unwrap_or(4);
    let a = moore_space(p, 1)?;
    let b = moore_space(q, 1)?;
    let mut coeffs = vec![params.coeff.unwrap_or(Coefficients::Z)];
    if params.coeff.is_none() {
        coeffs.push(Coefficients::Q);
        for m in [p, q] {
            if let Some(c) = Coefficients::zmod(m).ok().filter(|c| c.prime_field().is_some()) {
                coeffs.push(c);
            }
        }
        coeffs.dedup();
    }
    let mut checks = Vec::new();
    for c in coeffs {
        let h = join_homology(&a, &b, c);
        let upto: Vec<AbGroup> = (0..=through).map(|i| h.get(i)).collect();
        let ok = upto.iter().all(AbGroup::is_zero);
        checks.push(check(format!("reduced H_i(M(Z/{p},1) * M(Z/{q},1); {c}) = 0 for i <= {through}"), ok, groups(&upto)));
    }
    Ok(Report { target: Target::Join, header: format!("join (p = {p}, q = {q})"), checks })
}
