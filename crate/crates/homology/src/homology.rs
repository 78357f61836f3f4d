//! Homology and cohomology of chain complexes, and induced maps.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::abgroup::{ext, hom, tensor, tor, AbGroup, Coefficients};
use crate::complex::{ChainComplex, ChainMap, HomologyError, SimplicialComplex, SimplicialMap};
use crate::field::{apply, dense_rank, reduce_columns, Echelon, Field, Fp, Rationals, SVec};
use crate::snf::{snf, sparse_invariants, zeros, Matrix};

/// Graded groups `H_0, H_1, ...` over the given coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Homology {
    pub coefficients: Coefficients,
    pub cohomology: bool,
    pub groups: Vec<AbGroup>,
}

impl Homology {
    pub fn get(&self, k: usize) -> AbGroup {
        self.groups.get(k).cloned().unwrap_or_default()
    }

    /// Betti numbers when every group is a vector space.
    pub fn dimensions(&self) -> Option<Vec<usize>> {
        self.groups.iter().map(AbGroup::dimension).collect()
    }
}

impl fmt::Display for Homology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let h = if self.cohomology { "H^" } else { "H_" };
        let lines: Vec<String> = self.groups.iter().enumerate().map(|(k, g)| format!("{h}{k} = {g}")).collect();
        f.write_str(&lines.join("\n"))
    }
}

/// Integral homology from one SNF pass per boundary matrix.
pub fn integral_homology(c: &ChainComplex) -> Vec<AbGroup> {
    let n = c.ranks().len();
    // invariants of ∂_k for k = 0..=n (∂_n is zero)
    let inv: Vec<Vec<BigInt>> = (0..=n).map(|k| if k == 0 || k == n { Vec::new() } else { sparse_invariants(&c.boundary(k)) }).collect();
    (0..n)
        .map(|k| {
            let free = c.rank(k) - inv[k].len() - inv[k + 1].len();
            let tors = inv[k + 1].iter().filter(|d| !d.is_one()).cloned().collect();
            AbGroup::from_parts(free, tors)
        })
        .collect()
}

/// `H_k(C; G) = H_k ⊗ G ⊕ Tor(H_{k−1}, G)`.
pub fn homology(c: &ChainComplex, coeff: Coefficients) -> Homology {
    let hz = integral_homology(c);
    let groups = (0..hz.len())
        .map(|k| {
            let t = tensor(&hz[k], coeff);
            if k == 0 {
                t
            } else {
                t.direct_sum(&tor(&hz[k - 1], coeff))
            }
        })
        .collect();
    Homology { coefficients: coeff, cohomology: false, groups }
}

/// `Hᵏ(C; G) = Hom(H_k, G) ⊕ Ext(H_{k−1}, G)`.
pub fn cohomology(c: &ChainComplex, coeff: Coefficients) -> Homology {
    let hz = integral_homology(c);
    let groups = (0..hz.len())
        .map(|k| {
            let h = hom(&hz[k], coeff);
            if k == 0 {
                h
            } else {
                h.direct_sum(&ext(&hz[k - 1], coeff))
            }
        })
        .collect();
    Homology { coefficients: coeff, cohomology: true, groups }
}

/// Reduced integral homology (drops one `Z` from `H_0`).
pub fn reduced_integral_homology(c: &ChainComplex) -> Vec<AbGroup> {
    let mut h = integral_homology(c);
    if let Some(h0) = h.first_mut() {
        *h0 = h0.reduce_free();
    }
    h
}

/// Applies the universal coefficient formula to reduced integral groups.
pub fn with_coefficients(hz: &[AbGroup], coeff: Coefficients) -> Vec<AbGroup> {
    (0..hz.len())
        .map(|k| {
            let t = tensor(&hz[k], coeff);
            if k == 0 {
                t
            } else {
                t.direct_sum(&tor(&hz[k - 1], coeff))
            }
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variance {
    Homology,
    Cohomology,
}

/// The matrix of an induced map in chosen bases, with its flags.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InducedMapReport {
    pub variance: Variance,
    pub degree: usize,
    pub coefficients: Coefficients,
    pub source: AbGroup,
    pub target: AbGroup,
    /// Rows index target generators, columns index source generators.
    pub matrix: Vec<Vec<String>>,
    pub injective: bool,
    pub surjective: bool,
    /// Rank of the matrix, for field coefficients.
    pub rank: Option<usize>,
}

impl InducedMapReport {
    pub fn iso(&self) -> bool {
        self.injective && self.surjective
    }
}

impl fmt::Display for InducedMapReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sym = match self.variance {
            Variance::Homology => format!("H_{}", self.degree),
            Variance::Cohomology => format!("H^{}", self.degree),
        };
        let rows: Vec<String> = self.matrix.iter().map(|r| format!("[{}]", r.join(" "))).collect();
        write!(
            f,
            "{sym}(-;{}): {} -> {}  matrix [{}]  injective={} surjective={} iso={}",
            self.coefficients,
            self.source,
            self.target,
            rows.join(" "),
            self.injective,
            self.surjective,
            self.iso()
        )
    }
}

/// Cycle representatives of a basis of `H_n(C; F)` and an echelon for
/// reading off coordinates of cycles.
struct FieldBasis<F: Field> {
    reps: Vec<SVec<F::E>>,
    echelon: Echelon<F>,
}

fn field_basis<F: Field>(f: &F, c: &ChainComplex, n: usize) -> FieldBasis<F> {
    let cycles: Vec<SVec<F::E>> = if n == 0 {
        (0..c.rank(0)).map(|j| vec![(j, f.from_i64(1))]).collect()
    } else {
        reduce_columns(f, &c.boundary(n), true).1
    };
    let (mut echelon, _) = reduce_columns(f, &c.boundary(n + 1), false);
    let mut reps = Vec::new();
    for z in cycles {
        if let Some(r) = echelon.insert(f, z, Some(reps.len())) {
            reps.push(r);
        }
    }
    FieldBasis { reps, echelon }
}

fn field_induced<F: Field>(f: &F, map: &ChainMap, n: usize) -> (usize, usize, Vec<Vec<F::E>>) {
    let src = field_basis(f, &map.source, n);
    let tgt = field_basis(f, &map.target, n);
    let fm = map.map(n);
    let b = tgt.reps.len();
    let cols: Vec<Vec<F::E>> = src
        .reps
        .iter()
        .map(|z| {
            let img = apply(f, &fm, z);
            let (rest, coeffs) = tgt.echelon.reduce(f, img);
            debug_assert!(rest.is_empty(), "image of a cycle is a cycle");
            (0..b).map(|i| coeffs.get(&i).cloned().unwrap_or_else(|| f.zero())).collect()
        })
        .collect();
    (src.reps.len(), b, cols)
}

/// Integral `H_n` as `Z^r ⊕ ⊕ Z/dᵢ` with generating cycles and a
/// coordinate map for cycles.
struct ZPresentation {
    /// Cycle generators (chain vectors) and their orders (0 = infinite).
    gens: Vec<(Vec<BigInt>, BigInt)>,
    /// Rows of `U'·(V⁻¹)[r..]` for the kept generators.
    coord: Matrix,
}

impl ZPresentation {
    fn new(c: &ChainComplex, n: usize) -> ZPresentation {
        let cn = c.rank(n);
        let d = c.boundary(n).to_dense();
        let s = snf(&d, cn);
        let r = s.rank();
        let k = cn - r;
        // kernel basis: columns r.. of V; coordinates: rows r.. of V⁻¹
        let vinv_tail: Matrix = s.v_inv[r..].to_vec();
        let next = c.boundary(n + 1).to_dense();
        let m = c.rank(n + 1);
        let a: Matrix = mat_mul(&vinv_tail, &next, cn, m);
        let s2 = snf(&a, m);
        let orders: Vec<BigInt> = (0..k).map(|i| s2.invariants.get(i).cloned().unwrap_or_else(BigInt::zero)).collect();
        let kernel: Matrix = (0..cn).map(|row| s.v[row][r..].to_vec()).collect();
        let gens_matrix = mat_mul(&kernel, &s2.u_inv, k, k);
        let coord_full = mat_mul(&s2.u, &vinv_tail, k, cn);
        let mut gens = Vec::new();
        let mut coord = Vec::new();
        for (i, o) in orders.iter().enumerate() {
            if o.is_one() {
                continue;
            }
            gens.push(((0..cn).map(|row| gens_matrix[row][i].clone()).collect(), o.clone()));
            coord.push(coord_full[i].clone());
        }
        ZPresentation { gens, coord }
    }

    fn group(&self) -> AbGroup {
        let free = self.gens.iter().filter(|(_, o)| o.is_zero()).count();
        AbGroup::from_parts(free, self.gens.iter().map(|(_, o)| o.clone()).filter(|o| !o.is_zero()).collect())
    }

    fn coordinates(&self, z: &[BigInt]) -> Vec<BigInt> {
        self.coord
            .iter()
            .zip(&self.gens)
            .map(|(row, (_, o))| {
                let v: BigInt = row.iter().zip(z).map(|(a, b)| a * b).sum();
                if o.is_zero() {
                    v
                } else {
                    v.mod_floor(o)
                }
            })
            .collect()
    }
}

fn mat_mul(a: &Matrix, b: &Matrix, inner: usize, cols: usize) -> Matrix {
    let mut out = zeros(a.len(), cols);
    for (i, row) in a.iter().enumerate() {
        for k in 0..inner {
            let x = &row[k];
            if x.is_zero() {
                continue;
            }
            for j in 0..cols {
                out[i][j] += x * &b[k][j];
            }
        }
    }
    out
}

fn apply_dense(m: &crate::snf::SparseMatrix, v: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); m.rows];
    for (j, col) in m.cols.iter().enumerate() {
        if v[j].is_zero() {
            continue;
        }
        for &(i, x) in col {
            out[i] += &v[j] * x;
        }
    }
    out
}

/// Injectivity and surjectivity of `M : ⊕ Z/aⱼ → ⊕ Z/bᵢ` (order 0 = Z).
fn z_flags(m: &Matrix, src: &[BigInt], tgt: &[BigInt]) -> (bool, bool) {
    let (rows, cols) = (tgt.len(), src.len());
    // [M | diag(b)] : Z^cols ⊕ Z^rows → Z^rows
    let rel: Vec<usize> = (0..rows).filter(|&i| !tgt[i].is_zero()).collect();
    let width = cols + rel.len();
    let mut big = zeros(rows, width);
    for i in 0..rows {
        for j in 0..cols {
            big[i][j] = m[i][j].clone();
        }
    }
    for (k, &i) in rel.iter().enumerate() {
        big[i][cols + k] = tgt[i].clone();
    }
    let s = snf(&big, width);
    let surjective = s.rank() == rows && s.invariants.iter().all(|d| d.is_one());
    // kernel of [M | diag(b)], projected to the source coordinates, must lie in ⊕ aⱼZ
    let injective = (s.rank()..width).all(|c| {
        (0..cols).all(|j| {
            let x = &s.v[j][c];
            if src[j].is_zero() {
                x.is_zero()
            } else {
                (x % &src[j]).is_zero()
            }
        })
    });
    (injective, surjective)
}

fn z_induced(map: &ChainMap, n: usize) -> (AbGroup, AbGroup, Vec<Vec<String>>, bool, bool) {
    let src = ZPresentation::new(&map.source, n);
    let tgt = ZPresentation::new(&map.target, n);
    let fm = map.map(n);
    let cols: Vec<Vec<BigInt>> = src.gens.iter().map(|(z, _)| tgt.coordinates(&apply_dense(&fm, z))).collect();
    let rows = tgt.gens.len();
    let m: Matrix = (0..rows).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect();
    let so: Vec<BigInt> = src.gens.iter().map(|(_, o)| o.clone()).collect();
    let to: Vec<BigInt> = tgt.gens.iter().map(|(_, o)| o.clone()).collect();
    let (inj, sur) = z_flags(&m, &so, &to);
    let text = m.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect();
    (src.group(), tgt.group(), text, inj, sur)
}

/// Chain maps up to this many cells per degree use dense integral SNF.
pub const Z_INDUCED_LIMIT: usize = 400;

/// The map induced on `H_n` or `Hⁿ` with coefficients `Z`, `Q` or `Z/p`.
pub fn induced(map: &ChainMap, degree: usize, coeff: Coefficients, variance: Variance) -> Result<InducedMapReport, HomologyError> {
    let (chain_map, n) = match variance {
        Variance::Homology => (map.clone(), degree),
        Variance::Cohomology => {
            let top = map.source.ranks().len().max(map.target.ranks().len()).max(degree + 1);
            // cohomology in degree k is homology of the dual in degree top − k
            (map.dual(top), top - degree)
        }
    };
    let (source, target, matrix, injective, surjective, rank) = match coeff {
        Coefficients::Z => {
            let big = [n.saturating_sub(1), n, n + 1]
                .iter()
                .any(|&k| chain_map.source.rank(k).max(chain_map.target.rank(k)) > Z_INDUCED_LIMIT);
            if big {
                return Err(HomologyError::SizeLimit(format!("integral induced maps need at most {Z_INDUCED_LIMIT} cells per degree")));
            }
            let (s, t, m, i, o) = z_induced(&chain_map, n);
            (s, t, m, i, o, None)
        }
        Coefficients::Q => field_report(&Rationals, &chain_map, n, |d| AbGroup { rational: d, ..AbGroup::default() }),
        Coefficients::Zmod(_) => match coeff.prime_field() {
            Some(p) => field_report(&Fp(p), &chain_map, n, move |d| AbGroup::cyclic(&vec![p as i64; d])),
            None => return Err(HomologyError::Unsupported("induced maps over Z/p^k with k > 1".into())),
        },
        Coefficients::ZpInfinity(_) => return Err(HomologyError::Unsupported("induced maps with Zpinf coefficients".into())),
    };
    Ok(InducedMapReport { variance, degree, coefficients: coeff, source, target, matrix, injective, surjective, rank })
}

fn field_report<F: Field>(
    f: &F,
    map: &ChainMap,
    n: usize,
    group: impl Fn(usize) -> AbGroup,
) -> (AbGroup, AbGroup, Vec<Vec<String>>, bool, bool, Option<usize>) {
    let (a, b, cols) = field_induced(f, map, n);
    let r = dense_rank(f, &cols);
    let text = (0..b).map(|i| cols.iter().map(|c| f.render(&c[i])).collect()).collect();
    (group(a), group(b), text, r == a, r == b, Some(r))
}

/// `induced` for a simplicial map, optionally as a map of pairs.
pub fn induced_simplicial(
    f: &SimplicialMap,
    pairs: Option<(&SimplicialComplex, &SimplicialComplex)>,
    degree: usize,
    coeff: Coefficients,
    variance: Variance,
) -> Result<InducedMapReport, HomologyError> {
    induced(&f.relative_chain_map(pairs)?, degree, coeff, variance)
}

/// Rank of a boundary matrix over `Z/p`, computed directly.
pub fn rank_mod_p(c: &ChainComplex, k: usize, p: u64) -> usize {
    crate::field::rank(&Fp(p), &c.boundary(k))
}

/// `dim H_k(C; Z/p)` from mod-p ranks, without going through SNF.
pub fn betti_mod_p(c: &ChainComplex, p: u64) -> Vec<usize> {
    (0..c.ranks().len()).map(|k| c.rank(k) - rank_mod_p(c, k, p) - rank_mod_p(c, k + 1, p)).collect()
}
