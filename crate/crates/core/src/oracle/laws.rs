use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::Universe;
use crate::cdtype::{BasisKind, BocksteinFn, CdType, ExtCdType};
use crate::dimension::{anr_admissible, dim, is_full_valued, p_regular, testing_dim, DimError};
use crate::groups::{sigma_of, GroupExpr, SumPattern, TorKind};
use crate::prime_base::{primes_up_to, regions, ExtInt, ExtNat, Prime, PrimeFn, PrimeSet, Region};

macro_rules! laws {
    ($($var:ident => $name:literal,)*) => {
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
        pub enum Law { $($var,)* }

        impl Law {
            pub const ALL: &'static [Law] = &[$(Law::$var,)*];

            pub fn name(self) -> &'static str {
                match self { $(Law::$var => $name,)* }
            }
        }
    };
}

laws! {
    Bijection => "bijection",
    Closure => "closure",
    Distributivity => "distributivity",
    NormSandwich => "norm-sandwich",
    Conjugation => "conjugation",
    ConjugateMaximality => "conjugate-maximality",
    Alternative => "alternative",
    FieldBound => "field-bound",
    FieldAdditivity => "field-additivity",
    Subadditivity => "subadditivity",
    RegularFactor => "regular-factor",
    FullValuedFactor => "full-valued-factor",
    DeficiencyRule => "deficiency-rule",
    SingularProduct => "singular-product",
    PowerDichotomy => "power-dichotomy",
    NormWithBasis => "norm-with-basis",
    TestingIdentity => "testing-identity",
    Scaling => "scaling",
    Decomposition => "decomposition",
    SameType => "same-type",
    AnrBasic => "anr-basic",
    BocksteinSup => "bockstein-sup",
    InferiorNorm => "inferior-norm",
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Law {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Law::ALL.iter().copied().find(|l| l.name() == s).ok_or_else(|| format!("unknown law '{s}'"))
    }
}

impl Law {
    /// Parses `all` or a comma-separated list of law names.
    pub fn parse_selection(s: &str) -> Result<Vec<Law>, String> {
        if s.trim() == "all" {
            return Ok(Law::ALL.to_vec());
        }
        s.split(',').map(|t| t.trim().parse()).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CheckConfig {
    /// Tuples drawn when the full product exceeds `exhaustive_limit`.
    pub samples: usize,
    pub exhaustive_limit: u64,
    pub seed: u64,
    /// Counterexamples kept per law.
    pub max_failures: usize,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig { samples: 20_000, exhaustive_limit: 100_000, seed: 0x5eed, max_failures: 5 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub inputs: String,
    pub expected: String,
    pub got: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LawReport {
    pub law: String,
    pub checked: u64,
    pub failures: Vec<Failure>,
}

impl LawReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for LawReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "{verdict} {} (checked {})", self.law, self.checked)?;
        for x in &self.failures {
            write!(f, "\n  inputs: {}\n  expected: {}\n  got: {}", x.inputs, x.expected, x.got)?;
        }
        Ok(())
    }
}

struct Tally {
    checked: u64,
    failures: Vec<Failure>,
    cap: usize,
}

impl Tally {
    fn check(&mut self, ok: bool, inputs: impl FnOnce() -> String, expected: impl fmt::Display, got: impl fmt::Display) {
        self.checked += 1;
        if !ok && self.failures.len() < self.cap {
            self.failures.push(Failure { inputs: inputs(), expected: expected.to_string(), got: got.to_string() });
        }
    }

    fn eq<T: PartialEq + fmt::Display>(&mut self, inputs: impl FnOnce() -> String, expected: T, got: T) {
        self.check(expected == got, inputs, &expected, &got);
    }

    /// Records an operation that was expected to succeed but errored.
    fn error(&mut self, inputs: impl FnOnce() -> String, expected: &str, err: impl fmt::Display) {
        self.check(false, inputs, expected, format!("error: {err}"));
    }
}

struct Ctx<'a> {
    u: &'a Universe,
    cfg: CheckConfig,
    types: Vec<CdType>,
    ext: Vec<ExtCdType>,
    primes: Vec<Prime>,
    torsion_free: Vec<GroupExpr>,
    groups: Vec<GroupExpr>,
    kinds: Vec<BasisKind>,
}

impl<'a> Ctx<'a> {
    fn new(u: &'a Universe, cfg: CheckConfig) -> Ctx<'a> {
        let mut primes = u.primes.clone();
        primes.push(u.fresh_prime());
        let listed = PrimeSet::finite(u.primes.iter().copied());
        let mut torsion_free = vec![GroupExpr::Z, GroupExpr::Q, GroupExpr::Zloc(listed.clone())];
        let mut torsion = vec![GroupExpr::SumOver(PrimeSet::all(), SumPattern::Zp)];
        for &p in &primes {
            torsion_free.push(GroupExpr::Zloc(PrimeSet::singleton(p)));
            torsion_free.push(GroupExpr::Zinv(p));
            torsion.extend([
                GroupExpr::Zp(p),
                GroupExpr::Zpk(p, 2),
                GroupExpr::ZpInf(p),
                GroupExpr::Sum(vec![GroupExpr::Z, GroupExpr::Zp(p)]),
                GroupExpr::Sum(vec![GroupExpr::Q, GroupExpr::ZpInf(p)]),
                GroupExpr::SumOver(PrimeSet::singleton(p), SumPattern::ZpInf),
            ]);
        }
        let mut groups = torsion_free.clone();
        groups.extend(torsion);
        let mut kinds = vec![BasisKind::Q];
        for &p in &primes {
            kinds.extend([BasisKind::Zloc(p), BasisKind::Zp(p), BasisKind::ZpInf(p)]);
        }
        Ctx { u, cfg, types: u.enumerate_types(), ext: Vec::new(), primes, torsion_free, groups, kinds }
    }

    fn load_extended(&mut self) {
        if self.ext.is_empty() {
            self.ext = self.u.extended().enumerate_ext_types();
        }
    }

    /// All index tuples of length `k` over `n` items, or a fixed-seed sample.
    fn tuples(&self, law: Law, n: usize, k: u32) -> Vec<Vec<usize>> {
        let total = (n as u64).checked_pow(k).unwrap_or(u64::MAX);
        if total <= self.cfg.exhaustive_limit {
            let mut out = vec![vec![]];
            for _ in 0..k {
                out = out.into_iter().flat_map(|t| (0..n).map(move |i| [t.clone(), vec![i]].concat())).collect();
            }
            return out;
        }
        let salt = Law::ALL.iter().position(|&l| l == law).unwrap_or(0) as u64;
        let mut rng = ChaCha8Rng::seed_from_u64(self.cfg.seed ^ (salt << 32));
        (0..self.cfg.samples).map(|_| (0..k).map(|_| rng.gen_range(0..n)).collect()).collect()
    }

    fn pairs(&self, law: Law) -> Vec<(&CdType, &CdType)> {
        self.tuples(law, self.types.len(), 2).into_iter().map(|t| (&self.types[t[0]], &self.types[t[1]])).collect()
    }
}

fn fin(v: i64) -> ExtInt {
    ExtInt::Fin(v)
}

fn nat_int(v: ExtNat) -> ExtInt {
    v.to_ext_int().unwrap_or(ExtInt::PosInf)
}

fn plus(a: ExtInt, b: ExtInt) -> ExtInt {
    a.add(b).unwrap_or(ExtInt::PosInf)
}

fn nplus(a: ExtNat, b: ExtNat) -> ExtNat {
    match (a, b) {
        (ExtNat::Fin(x), ExtNat::Fin(y)) => ExtNat::Fin(x + y),
        _ => ExtNat::Inf,
    }
}

fn key_regions(phis: &[&BocksteinFn]) -> Vec<Region> {
    let keys: BTreeSet<Prime> = phis.iter().flat_map(|p| p.keys()).collect();
    regions(&keys).collect()
}

fn eps(phi: &BocksteinFn, r: Region) -> i64 {
    let (_, zp, zi) = phi.local(r);
    zp.sub(zi).ok().and_then(ExtInt::finite).unwrap_or(0)
}

fn bijection(c: &Ctx, t: &mut Tally) {
    let phis = c.u.enumerate_phis();
    for phi in &phis {
        match phi.to_ext() {
            Ok(f) => t.eq(|| phi.render(), phi.render(), f.to_phi().render()),
            Err(e) => t.error(|| phi.render(), "a valid triple", e),
        }
    }
    let triples = c.u.enumerate_triples();
    for f in &triples {
        let back = f.to_phi().to_ext();
        match back {
            Ok(g) => t.eq(|| f.to_string(), f.to_string(), g.to_string()),
            Err(e) => t.error(|| f.to_string(), "a valid triple", e),
        }
    }
    // the independently built triple list covers exactly the image of from_phi
    let a: BTreeSet<String> = phis.iter().filter_map(|p| p.to_ext().ok()).map(|f| f.to_string()).collect();
    let b: BTreeSet<String> = triples.iter().map(|f| f.to_string()).collect();
    t.eq(|| "image of from_phi vs direct triples".into(), a.len(), b.len());
    t.check(a == b, || "image of from_phi vs direct triples".into(), "equal sets", "different sets");
}

fn closure(c: &Ctx, t: &mut Tally) {
    for (a, b) in c.pairs(Law::Closure) {
        let (x, y) = (a.as_ext(), b.as_ext());
        let ins = || format!("{a} ; {b}");
        for (name, r) in [("sum", x.sum(&y)), ("times", x.times(&y)), ("wedge", x.wedge(&y))] {
            match r {
                Ok(z) => {
                    let v = z.to_phi().validate();
                    t.check(v.is_empty(), ins, format!("{name} satisfies BI1-BI6"), format!("{v:?}"));
                }
                Err(e) => t.error(ins, name, e),
            }
        }
    }
}

fn distributivity(c: &Ctx, t: &mut Tally) {
    let n = c.types.len();
    for tup in c.tuples(Law::Distributivity, n, 3) {
        let (a, b, cc) = (c.types[tup[0]].as_ext(), c.types[tup[1]].as_ext(), c.types[tup[2]].as_ext());
        let ins = || format!("{a} ; {b} ; {cc}");
        let lhs = b.sum(&cc).and_then(|s| a.times(&s));
        let rhs = a.times(&b).and_then(|x| a.times(&cc).and_then(|y| x.sum(&y)));
        match (lhs, rhs) {
            (Ok(l), Ok(r)) => t.eq(ins, r.to_string(), l.to_string()),
            (l, r) => t.error(ins, "defined products", format!("{l:?} / {r:?}")),
        }
        let lhs = b.wedge(&cc).and_then(|w| a.sum(&w));
        let rhs = a.sum(&b).and_then(|x| a.sum(&cc).and_then(|y| x.wedge(&y)));
        match (lhs, rhs) {
            (Ok(l), Ok(r)) => t.eq(ins, r.to_string(), l.to_string()),
            (l, r) => t.error(ins, "defined sums", format!("{l:?} / {r:?}")),
        }
    }
}

fn norm_sandwich(c: &Ctx, t: &mut Tally) {
    for (a, b) in c.pairs(Law::NormSandwich) {
        let ins = || format!("{a} ; {b}");
        let s = match a.sum(b) {
            Ok(s) => s.norm(),
            Err(e) => return t.error(ins, "sum", e),
        };
        let lo = nplus(a.inferior_norm(), b.norm());
        let hi = nplus(a.norm(), b.norm());
        t.check(lo <= s && s <= hi, ins, format!("{lo} <= norm <= {hi}"), s);
    }
}

fn conjugation(c: &mut Ctx, t: &mut Tally) {
    c.load_extended();
    for f in c.ext.iter().filter(|f| f.field_fn().values().all(|v| v.is_finite())) {
        let ins = || f.to_string();
        let g = match f.conjugate() {
            Ok(g) => g,
            Err(e) => {
                t.error(ins, "conjugate", e);
                continue;
            }
        };
        match g.conjugate() {
            Ok(h) => t.eq(ins, f.to_string(), h.to_string()),
            Err(e) => t.error(ins, "double conjugate", e),
        }
        match f.sum(&g) {
            Ok(s) => {
                let target = ExtCdType::new(f.singular().clone(), f.singular().clone(), PrimeFn::constant(ExtInt::ZERO))
                    .expect("(S, S; 0) is valid");
                t.eq(ins, target.to_string(), s.to_string());
                t.eq(ins, ExtInt::ZERO, s.norm());
            }
            Err(e) => t.error(ins, "F [+] conj F", e),
        }
    }
}

fn conjugate_maximality(c: &mut Ctx, t: &mut Tally) {
    c.load_extended();
    let finite: Vec<&ExtCdType> = c.ext.iter().filter(|f| f.field_fn().values().all(|v| v.is_finite())).collect();
    let phis: Vec<BocksteinFn> = finite.iter().map(|f| f.to_phi()).collect();
    // outer F is the tuple; the inner scan over F' is always exhaustive
    for i in c.tuples(Law::ConjugateMaximality, finite.len(), 1).into_iter().map(|v| v[0]) {
        let f = finite[i];
        let bar = match f.conjugate() {
            Ok(g) => g.to_phi(),
            Err(e) => {
                t.error(|| f.to_string(), "conjugate", e);
                continue;
            }
        };
        let mut bad = None;
        for (j, g) in finite.iter().enumerate() {
            let small = f.sum(g).map(|s| s.norm() <= ExtInt::ZERO).unwrap_or(false);
            if small && !phis[j].le(&bar) {
                bad = Some(g);
                break;
            }
        }
        match bad {
            None => t.check(true, String::new, "", ""),
            Some(g) => t.check(false, || format!("{f} ; F' = {g}"), "F' below conj F", "not below"),
        }
    }
}

fn alternative(c: &Ctx, t: &mut Tally) {
    for f in &c.types {
        let phi = f.to_phi();
        let ext = f.as_ext();
        for r in key_regions(&[&phi]) {
            let (zl, _, zi) = phi.local(r);
            let ins = || format!("{f} at {r}");
            t.check(zl == phi.q || zl == zi.succ(), ins, format!("{} or {}", phi.q, zi.succ()), zl);
            if ext.in_s(r) {
                t.eq(ins, phi.q.max(zi.succ()), zl);
            }
        }
    }
}

fn field_bound(c: &Ctx, t: &mut Tally) {
    for f in &c.types {
        let bound = nplus(f.field_max(), ExtNat::ONE);
        t.check(f.norm() <= bound, || f.to_string(), format!("<= {bound}"), f.norm());
    }
}

fn field_additivity(c: &Ctx, t: &mut Tally) {
    for (a, b) in c.pairs(Law::FieldAdditivity) {
        let ins = || format!("{a} ; {b}");
        let s = match a.sum(b) {
            Ok(s) => s.to_phi(),
            Err(e) => return t.error(ins, "sum", e),
        };
        let (pa, pb) = (a.to_phi(), b.to_phi());
        t.eq(ins, plus(pa.q, pb.q), s.q);
        for r in key_regions(&[&pa, &pb]) {
            t.eq(ins, plus(*pa.zp.at(r), *pb.zp.at(r)), *s.zp.at(r));
        }
    }
}

fn subadditivity(c: &Ctx, t: &mut Tally) {
    for (a, b) in c.pairs(Law::Subadditivity) {
        let Ok(s) = a.sum(b) else { continue };
        for g in &c.groups {
            let tf = c.torsion_free.contains(g);
            let ins = || format!("{a} ; {b} ; G = {g}");
            match (dim(&s, g), dim(a, g), dim(b, g)) {
                (Ok(ds), Ok(da), Ok(db)) => {
                    let bound = if tf { nplus(da, db) } else { nplus(nplus(da, db), ExtNat::ONE) };
                    t.check(ds <= bound, ins, format!("<= {bound}"), ds);
                }
                _ => t.error(ins, "dimensions", "group error"),
            }
        }
    }
}

fn regular_factor(c: &Ctx, t: &mut Tally) {
    for (a, b) in c.pairs(Law::RegularFactor) {
        let Ok(s) = a.sum(b) else { continue };
        for &p in &c.primes {
            if !p_regular(a, p).unwrap_or(false) {
                continue;
            }
            for g in [GroupExpr::Zp(p), GroupExpr::ZpInf(p), GroupExpr::Zloc(PrimeSet::singleton(p))] {
                let ins = || format!("{a} ; {b} ; G = {g}");
                match (dim(&s, &g), dim(a, &g), dim(b, &g)) {
                    (Ok(ds), Ok(da), Ok(db)) => t.eq(ins, nplus(da, db), ds),
                    _ => t.error(ins, "dimensions", "group error"),
                }
            }
        }
    }
}

fn full_valued_factor(c: &Ctx, t: &mut Tally) {
    for (a, b) in c.pairs(Law::FullValuedFactor) {
        if !is_full_valued(a) {
            continue;
        }
        let ins = || format!("{a} ; {b}");
        match a.sum(b) {
            Ok(s) => t.eq(ins, nplus(a.norm(), b.norm()), s.norm()),
            Err(e) => t.error(ins, "sum", e),
        }
    }
}

fn deficiency_rule(c: &Ctx, t: &mut Tally) {
    for (a, b) in c.pairs(Law::DeficiencyRule) {
        let ins = || format!("{a} ; {b}");
        let s = match a.sum(b) {
            Ok(s) => s.to_phi(),
            Err(e) => return t.error(ins, "sum", e),
        };
        let (pa, pb) = (a.to_phi(), b.to_phi());
        for r in key_regions(&[&pa, &pb]) {
            let (e1, e2) = (eps(&pa, r), eps(&pb, r));
            t.eq(ins, e1 + e2 - e1 * e2, eps(&s, r));
        }
    }
}

fn singular_product(c: &Ctx, t: &mut Tally) {
    for (a, b) in c.pairs(Law::SingularProduct) {
        let ins = || format!("{a} ; {b}");
        let s = match a.sum(b) {
            Ok(s) => s.to_phi(),
            Err(e) => return t.error(ins, "sum", e),
        };
        let (pa, pb) = (a.to_phi(), b.to_phi());
        let (xa, xb) = (a.as_ext(), b.as_ext());
        for r in key_regions(&[&pa, &pb]) {
            if !(xa.in_s(r) && xb.in_s(r)) {
                continue;
            }
            let e = fin(eps(&pa, r) * eps(&pb, r));
            t.eq(ins, plus(plus(*pa.zpinf.at(r), *pb.zpinf.at(r)), e), *s.zpinf.at(r));
        }
    }
}

fn power_dichotomy(c: &Ctx, t: &mut Tally) {
    for f in &c.types {
        let ExtNat::Fin(b) = f.norm() else { continue };
        let basic = f.field_max() == f.norm();
        for k in 2..=4u32 {
            let ins = || format!("{f} ; k = {k}");
            let kk = u64::from(k);
            let want = if basic { kk * b } else { kk * b - kk + 1 };
            match f.scale(k) {
                Ok(s) => t.eq(ins, ExtNat::Fin(want), s.norm()),
                Err(e) => t.error(ins, "k-fold sum", e),
            }
        }
    }
}

fn norm_with_basis(c: &Ctx, t: &mut Tally) {
    let top = c.u.value_bound as u64 + 2;
    for f in &c.types {
        let phi = f.to_phi();
        let norm = f.norm();
        for &g in &c.kinds {
            for n in 1..=top {
                let ins = || format!("{f} ; Phi({g},{n})");
                let basis = CdType::phi_basis(g, n).expect("n >= 1");
                let got = match f.sum(&basis) {
                    Ok(s) => nat_int(s.norm()),
                    Err(e) => {
                        t.error(ins, "sum", e);
                        continue;
                    }
                };
                let with_g = plus(fin(n as i64), phi.get(g));
                let nf = nat_int(norm);
                if nf >= fin(n as i64) {
                    t.eq(ins, nf.succ().max(with_g), got);
                }
                if nf <= fin(n as i64) {
                    t.eq(ins, with_g, got);
                }
            }
        }
    }
}

fn testing_identity(c: &Ctx, t: &mut Tally) {
    for f in &c.types {
        let ExtNat::Fin(norm) = f.norm() else { continue };
        for g in &c.groups {
            for n in 1..=norm + 2 {
                let ins = || format!("{f} ; G = {g} ; n = {n}");
                match testing_dim(f, g, n) {
                    Ok(v) => match dim(f, g) {
                        Ok(d) => t.eq(ins, d, v),
                        Err(e) => t.error(ins, "dimension", e),
                    },
                    Err(DimError::Precondition(_)) => {}
                    Err(e) => t.error(ins, "testing dimension", e),
                }
            }
        }
    }
}

fn scaling(c: &Ctx, t: &mut Tally) {
    for &g in &c.kinds {
        for n in 2..=c.u.value_bound as u64 + 1 {
            for k in 2..=4u64 {
                let ins = || format!("{k} Phi({g},{n})");
                let m = if matches!(g, BasisKind::ZpInf(_)) { k * n - k + 1 } else { k * n };
                let base = CdType::phi_basis(g, n).expect("n >= 1");
                let want = CdType::phi_basis(g, m).and_then(|x| x.wedge(&CdType::nat(k)));
                match (base.scale(k as u32), want) {
                    (Ok(l), Ok(r)) => t.eq(ins, r.to_string(), l.to_string()),
                    (l, r) => t.error(ins, "defined", format!("{l:?} / {r:?}")),
                }
            }
        }
    }
}

fn decomposition(c: &Ctx, t: &mut Tally) {
    for f in &c.types {
        let ins = || f.to_string();
        match f.decompose().and_then(|d| d.recompose()) {
            Ok(g) => t.eq(ins, f.to_string(), g.to_string()),
            Err(e) => t.error(ins, "a decomposition", e),
        }
    }
}

fn same_type(c: &Ctx, t: &mut Tally) {
    // pair each directly built triple with the type read back from its φ
    let triples: Vec<CdType> = c.u.enumerate_triples().into_iter().filter_map(|x| x.positive().ok()).collect();
    let n = triples.len().min(c.types.len());
    for tup in c.tuples(Law::SameType, n, 2) {
        let (f, z) = (&triples[tup[0]], &c.types[tup[1]]);
        let ins = || format!("{f} ; Z = {z}");
        let twin = match CdType::from_phi(&f.to_phi()) {
            Ok(x) => x,
            Err(e) => {
                t.error(ins, "from_phi", e);
                continue;
            }
        };
        match (f.sum(z), twin.sum(z)) {
            (Ok(a), Ok(b)) => t.eq(ins, a.norm(), b.norm()),
            (a, b) => t.error(ins, "sums", format!("{a:?} / {b:?}")),
        }
    }
}

fn anr_basic(c: &Ctx, t: &mut Tally) {
    for f in &c.types {
        if !anr_admissible(f).admissible {
            continue;
        }
        let ins = || f.to_string();
        t.eq(ins, f.norm(), f.field_max());
        if let ExtNat::Fin(b) = f.norm() {
            match f.scale(2) {
                Ok(s) => t.eq(ins, ExtNat::Fin(2 * b), s.norm()),
                Err(e) => t.error(ins, "square", e),
            }
        }
    }
}

fn bockstein_sup(c: &Ctx, t: &mut Tally) {
    let mut probe = primes_up_to(100);
    probe.extend(c.u.primes.iter().copied());
    for f in &c.types {
        let phi = f.to_phi();
        for g in &c.groups {
            let ins = || format!("{f} ; G = {g}");
            let Ok(fam) = sigma_of(g) else {
                t.error(ins, "family", "group error");
                continue;
            };
            let mut best = ExtInt::ZERO;
            if fam.has_q {
                best = best.max(phi.q);
            }
            for &p in &probe {
                if fam.loc.contains(p) {
                    best = best.max(phi.get(BasisKind::Zloc(p)));
                }
                match fam.tors.get(p) {
                    TorKind::Zp => best = best.max(phi.get(BasisKind::Zp(p))),
                    TorKind::ZpInf => best = best.max(phi.get(BasisKind::ZpInf(p))),
                    TorKind::None => {}
                }
            }
            match dim(f, g) {
                Ok(d) => t.eq(ins, best, nat_int(d)),
                Err(e) => t.error(ins, "dimension", e),
            }
        }
    }
}

fn inferior_norm(c: &Ctx, t: &mut Tally) {
    for f in &c.types {
        let phi = f.to_phi();
        t.eq(|| f.to_string(), phi.inf(), nat_int(f.inferior_norm()));
        t.eq(|| f.to_string(), phi.sup(), nat_int(f.norm()));
    }
}

/// Runs each selected law over the universe.
pub fn check_laws(u: &Universe, laws: &[Law], cfg: CheckConfig) -> Vec<LawReport> {
    let mut ctx = Ctx::new(u, cfg);
    let mut done: HashMap<Law, LawReport> = HashMap::new();
    let mut out = Vec::new();
    for &law in laws {
        if let Some(r) = done.get(&law) {
            out.push(r.clone());
            continue;
        }
        let mut t = Tally { checked: 0, failures: Vec::new(), cap: cfg.max_failures };
        match law {
            Law::Bijection => bijection(&ctx, &mut t),
            Law::Closure => closure(&ctx, &mut t),
            Law::Distributivity => distributivity(&ctx, &mut t),
            Law::NormSandwich => norm_sandwich(&ctx, &mut t),
            Law::Conjugation => conjugation(&mut ctx, &mut t),
            Law::ConjugateMaximality => conjugate_maximality(&mut ctx, &mut t),
            Law::Alternative => alternative(&ctx, &mut t),
            Law::FieldBound => field_bound(&ctx, &mut t),
            Law::FieldAdditivity => field_additivity(&ctx, &mut t),
            Law::Subadditivity => subadditivity(&ctx, &mut t),
            Law::RegularFactor => regular_factor(&ctx, &mut t),
            Law::FullValuedFactor => full_valued_factor(&ctx, &mut t),
            Law::DeficiencyRule => deficiency_rule(&ctx, &mut t),
            Law::SingularProduct => singular_product(&ctx, &mut t),
            Law::PowerDichotomy => power_dichotomy(&ctx, &mut t),
            Law::NormWithBasis => norm_with_basis(&ctx, &mut t),
            Law::TestingIdentity => testing_identity(&ctx, &mut t),
            Law::Scaling => scaling(&ctx, &mut t),
            Law::Decomposition => decomposition(&ctx, &mut t),
            Law::SameType => same_type(&ctx, &mut t),
            Law::AnrBasic => anr_basic(&ctx, &mut t),
            Law::BocksteinSup => bockstein_sup(&ctx, &mut t),
            Law::InferiorNorm => inferior_norm(&ctx, &mut t),
        }
        let report = LawReport { law: law.name().to_string(), checked: t.checked, failures: t.failures };
        done.insert(law, report.clone());
        out.push(report);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for &l in Law::ALL {
            assert_eq!(l.name().parse::<Law>().unwrap(), l);
        }
        assert_eq!(Law::parse_selection("all").unwrap().len(), Law::ALL.len());
        assert!(Law::parse_selection("norm-sandwich,nope").is_err());
    }

    #[test]
    fn small_universe_passes() {
        let u = Universe::new(vec![Prime::new(2).unwrap()], 2);
        for r in check_laws(&u, Law::ALL, CheckConfig::default()) {
            assert!(r.passed(), "{r}");
            assert!(r.checked > 0, "{} checked nothing", r.law);
        }
    }
}
