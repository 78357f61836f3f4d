//! Finite complexes: mapping cylinders, Pontryagin stages, Edwards-Walsh
//! skeleta, Moore spaces and joins.

use std::collections::HashMap;

use crate::abgroup::{tensor_fg, tor_fg, AbGroup, Coefficients};
use crate::complex::{ChainComplex, ChainMap, HomologyError, SimplicialComplex, SimplicialMap};
use crate::homology::{reduced_integral_homology, with_coefficients, Homology};
use crate::snf::SparseMatrix;

/// Order complex of a finite poset on `0..n`: one simplex per chain.
pub fn order_complex(n: usize, less: impl Fn(usize, usize) -> bool) -> SimplicialComplex {
    let up: Vec<Vec<usize>> = (0..n).map(|a| (0..n).filter(|&b| less(a, b)).collect()).collect();
    let mut chains = Vec::new();
    let mut stack: Vec<Vec<usize>> = (0..n).map(|a| vec![a]).collect();
    while let Some(chain) = stack.pop() {
        let last = *chain.last().expect("nonempty chain");
        for &b in &up[last] {
            let mut next = chain.clone();
            next.push(b);
            stack.push(next);
        }
        chains.push(chain);
    }
    SimplicialComplex::from_facets(n, chains).expect("chains of a poset form a complex")
}

/// Barycentric subdivision; vertex `i` is the barycenter of the `i`-th
/// simplex in `K.simplices()` order.
pub fn barycentric_subdivision(k: &SimplicialComplex) -> (SimplicialComplex, Vec<Vec<usize>>) {
    let cells: Vec<Vec<usize>> = k.simplices().cloned().collect();
    let sd = order_complex(cells.len(), |a, b| is_proper_face(&cells[a], &cells[b]));
    (sd, cells)
}

fn is_proper_face(a: &[usize], b: &[usize]) -> bool {
    a.len() < b.len() && a.iter().all(|v| b.contains(v))
}

/// A vertex of a mapping cylinder: the barycenter of a source or target simplex.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum CylinderCell {
    Source(Vec<usize>),
    Target(Vec<usize>),
}

/// The order complex of `K ⊔ L` with `τ < σ` whenever `τ ∈ L`, `σ ∈ K` and
/// `τ ⊆ f(σ)`. Source cells come first, in `K.simplices()` order.
#[derive(Debug, Clone)]
pub struct MappingCylinder {
    pub complex: SimplicialComplex,
    pub labels: Vec<CylinderCell>,
    /// `sd K` as a subcomplex (the free end).
    pub source_end: SimplicialComplex,
    /// `sd L` as a subcomplex (the retract end).
    pub target_end: SimplicialComplex,
    pub source_inclusion: SimplicialMap,
    pub target_inclusion: SimplicialMap,
    /// Deformation retraction onto `sd L`: `σ ↦ f(σ)`.
    pub retraction: SimplicialMap,
}

impl MappingCylinder {
    pub fn index_of(&self, cell: &CylinderCell) -> Option<usize> {
        self.labels.iter().position(|c| c == cell)
    }

    /// Vertices of `source_end` in cyclic order, when it is a circle.
    pub fn boundary_cycle(&self) -> Option<Vec<usize>> {
        cycle_order(&self.source_end)
    }
}

/// Walks a 1-dimensional complex in which every vertex has degree two.
fn cycle_order(c: &SimplicialComplex) -> Option<Vec<usize>> {
    let mut adj: HashMap<usize, Vec<usize>> = HashMap::new();
    for e in c.cells(1) {
        adj.entry(e[0]).or_default().push(e[1]);
        adj.entry(e[1]).or_default().push(e[0]);
    }
    if adj.is_empty() || adj.values().any(|n| n.len() != 2) || c.dim() != 1 {
        return None;
    }
    let start = *adj.keys().min()?;
    let mut out = vec![start];
    let (mut prev, mut cur) = (start, *adj[&start].iter().min()?);
    while cur != start {
        out.push(cur);
        let next = adj[&cur].iter().copied().find(|&v| v != prev)?;
        prev = cur;
        cur = next;
    }
    (out.len() == adj.len()).then_some(out)
}

pub fn mapping_cylinder(f: &SimplicialMap) -> Result<MappingCylinder, HomologyError> {
    let ks: Vec<Vec<usize>> = f.source.simplices().cloned().collect();
    let ls: Vec<Vec<usize>> = f.target.simplices().cloned().collect();
    let nk = ks.len();
    let images: Vec<Vec<usize>> = ks.iter().map(|s| f.image(s)).collect();
    let less = |a: usize, b: usize| match (a < nk, b < nk) {
        (true, true) => is_proper_face(&ks[a], &ks[b]),
        (false, false) => is_proper_face(&ls[a - nk], &ls[b - nk]),
        (false, true) => ls[a - nk].iter().all(|v| images[b].contains(v)),
        (true, false) => false,
    };
    let complex = order_complex(nk + ls.len(), less);
    let labels: Vec<CylinderCell> = ks
        .iter()
        .cloned()
        .map(CylinderCell::Source)
        .chain(ls.iter().cloned().map(CylinderCell::Target))
        .collect();

    let (sd_k, _) = barycentric_subdivision(&f.source);
    let (sd_l, _) = barycentric_subdivision(&f.target);
    let source_end = SimplicialComplex::from_facets(complex.vertex_count(), sd_k.simplices().cloned())?;
    let target_end =
        SimplicialComplex::from_facets(complex.vertex_count(), sd_l.simplices().map(|s| s.iter().map(|v| v + nk).collect::<Vec<_>>()))?;
    let source_inclusion = SimplicialMap::new(sd_k, complex.clone(), (0..nk).collect())?;
    let target_inclusion = SimplicialMap::new(sd_l.clone(), complex.clone(), (nk..nk + ls.len()).collect())?;
    let l_index: HashMap<&Vec<usize>, usize> = ls.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let retract: Vec<usize> = (0..nk).map(|a| l_index[&images[a]]).chain(0..ls.len()).collect();
    let retraction = SimplicialMap::new(complex.clone(), sd_l, retract)?;
    Ok(MappingCylinder { complex, labels, source_end, target_end, source_inclusion, target_inclusion, retraction })
}

/// The `p`-fold winding of a `p·k`-gon onto a `k`-gon, `vᵢ ↦ i mod k`.
pub fn degree_map_circle(p: usize, k: usize) -> Result<SimplicialMap, HomologyError> {
    if p < 2 || k < 3 {
        return Err(HomologyError::Precondition(format!("degree map needs p >= 2 and k >= 3, got p={p}, k={k}")));
    }
    SimplicialMap::new(SimplicialComplex::polygon(p * k), SimplicialComplex::polygon(k), (0..p * k).map(|i| i % k).collect())
}

/// `M_p`: the cylinder of the `p`-fold winding of a `3p`-gon onto a triangle.
pub fn mp_cylinder(p: usize) -> Result<MappingCylinder, HomologyError> {
    mapping_cylinder(&degree_map_circle(p, 3)?)
}

/// The cone over a subcomplex, with the apex appended as the last vertex.
pub fn cone(base: &SimplicialComplex, vertex_count: usize) -> SimplicialComplex {
    let apex = vertex_count;
    let facets = base.simplices().flat_map(|s| {
        let mut t = s.clone();
        t.push(apex);
        [s.clone(), t]
    });
    SimplicialComplex::from_facets(vertex_count + 1, facets).expect("cone over a complex")
}

/// Collapses the target end of a cylinder to a point: a map of pairs
/// `(M, source_end) → (cone over source_end, source_end)`.
#[derive(Debug, Clone)]
pub struct ConeCollapse {
    pub map: SimplicialMap,
    pub cone: SimplicialComplex,
    pub base: SimplicialComplex,
}

pub fn collapse_to_cone(cyl: &MappingCylinder) -> Result<ConeCollapse, HomologyError> {
    let nk = cyl.labels.iter().filter(|c| matches!(c, CylinderCell::Source(_))).count();
    let base = SimplicialComplex::from_facets(nk, cyl.source_end.simplices().cloned())?;
    let cone = cone(&base, nk);
    let base = SimplicialComplex::from_facets(nk + 1, base.simplices().cloned())?;
    let vertices = (0..cyl.labels.len()).map(|v| if v < nk { v } else { nk }).collect();
    let map = SimplicialMap::new(cyl.complex.clone(), cone.clone(), vertices)?;
    Ok(ConeCollapse { map, cone, base })
}

/// Stages `L₁, …, L_{k+1}` of the Pontryagin construction with bonding maps.
#[derive(Debug, Clone)]
pub struct PontryaginTower {
    pub p: usize,
    pub stages: Vec<SimplicialComplex>,
    /// `L_j'`: every triangle of `L_j` coned off over its subdivided boundary.
    pub coned: Vec<SimplicialComplex>,
    /// `L_{j+1} → L_j'`, collapsing each inner circle of `M_p` to the apex.
    pub collapses: Vec<SimplicialMap>,
    /// `L_j' → L_j`, a simplicial approximation of the identity.
    pub approximations: Vec<SimplicialMap>,
    /// `q : L_{j+1} → L_j`, the composite of the two above.
    pub bonds: Vec<SimplicialMap>,
}

/// Largest number of stages past `L₁` that will be built.
pub const PONTRYAGIN_STAGE_LIMIT: usize = 2;

pub fn pontryagin_stage(p: usize, k: usize) -> Result<PontryaginTower, HomologyError> {
    if k == 0 || k > PONTRYAGIN_STAGE_LIMIT {
        return Err(HomologyError::SizeLimit(format!("stages must be 1..={PONTRYAGIN_STAGE_LIMIT}, got {k}")));
    }
    let template = mp_cylinder(p)?;
    let cycle = template_cycle(&template, p)?;
    let mut tower = PontryaginTower {
        p,
        stages: vec![SimplicialComplex::simplex_boundary(3)],
        coned: Vec::new(),
        collapses: Vec::new(),
        approximations: Vec::new(),
        bonds: Vec::new(),
    };
    for _ in 0..k {
        let step = replace_triangles(tower.stages.last().expect("L_1"), &template, &cycle, p)?;
        tower.stages.push(step.next);
        tower.coned.push(step.coned);
        tower.collapses.push(step.collapse);
        tower.approximations.push(step.approximation);
        tower.bonds.push(step.bond);
    }
    Ok(tower)
}

/// The boundary 6p-gon of `M_p` starting at the barycenter of `v₀` and
/// walking towards the edge `{0, 1}`.
fn template_cycle(t: &MappingCylinder, p: usize) -> Result<Vec<usize>, HomologyError> {
    let n = 3 * p;
    let missing = || HomologyError::Precondition("cylinder lacks a boundary cell".into());
    let mut out = Vec::with_capacity(2 * n);
    for i in 0..n {
        let j = (i + 1) % n;
        let edge = if i < j { vec![i, j] } else { vec![j, i] };
        out.push(t.index_of(&CylinderCell::Source(vec![i])).ok_or_else(missing)?);
        out.push(t.index_of(&CylinderCell::Source(edge)).ok_or_else(missing)?);
    }
    Ok(out)
}

struct Step {
    next: SimplicialComplex,
    coned: SimplicialComplex,
    collapse: SimplicialMap,
    approximation: SimplicialMap,
    bond: SimplicialMap,
}

fn replace_triangles(l: &SimplicialComplex, template: &MappingCylinder, cycle: &[usize], p: usize) -> Result<Step, HomologyError> {
    let pieces = 2 * p;
    let v0 = l.vertex_count();
    // interior vertices of each edge, in the direction x → y for x < y
    let mut next_vertex = v0;
    let mut paths: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
    let mut approx: Vec<usize> = (0..v0).collect();
    for e in l.cells(1) {
        let mut path = vec![e[0]];
        for _ in 1..pieces {
            path.push(next_vertex);
            approx.push(e[0]);
            next_vertex += 1;
        }
        path.push(e[1]);
        paths.insert(e.clone(), path);
    }
    let shared = next_vertex;
    let boundary_of = |t: &[usize]| -> Vec<usize> {
        let (a, b, c) = (t[0], t[1], t[2]);
        let ab = &paths[&vec![a, b]];
        let bc = &paths[&vec![b, c]];
        let ca: Vec<usize> = paths[&vec![a, c]].iter().rev().copied().collect();
        ab[..pieces].iter().chain(&bc[..pieces]).chain(&ca[..pieces]).copied().collect()
    };

    let n_template = template.labels.len();
    let on_cycle: HashMap<usize, usize> = cycle.iter().enumerate().map(|(pos, &v)| (v, pos)).collect();
    let inner: Vec<usize> = (0..n_template).filter(|v| !on_cycle.contains_key(v)).collect();

    let triangles = l.cells(2);
    let mut next_facets: Vec<Vec<usize>> = l.cells(0).to_vec();
    let mut coned_facets: Vec<Vec<usize>> = l.cells(0).to_vec();
    let mut collapse: Vec<usize> = (0..shared).collect();
    let mut apex_images = Vec::new();
    let mut fresh = shared;
    for (ti, t) in triangles.iter().enumerate() {
        let ring = boundary_of(t);
        let apex = shared + ti;
        apex_images.push(t[0]);
        let mut local = vec![usize::MAX; n_template];
        for (&v, &pos) in &on_cycle {
            local[v] = ring[pos];
        }
        for &v in &inner {
            local[v] = fresh;
            collapse.push(apex);
            fresh += 1;
        }
        for s in template.complex.cells(2) {
            next_facets.push(s.iter().map(|&v| local[v]).collect());
        }
        for i in 0..ring.len() {
            coned_facets.push(vec![apex, ring[i], ring[(i + 1) % ring.len()]]);
        }
    }
    // edges of L_j that bound no triangle keep their subdivided form
    for path in paths.values() {
        for w in path.windows(2) {
            next_facets.push(w.to_vec());
            coned_facets.push(w.to_vec());
        }
    }
    let next = SimplicialComplex::from_facets(fresh, next_facets)?;
    let coned = SimplicialComplex::from_facets(shared + triangles.len(), coned_facets)?;
    approx.extend(apex_images);
    let collapse = SimplicialMap::new(next.clone(), coned.clone(), collapse)?;
    let approximation = SimplicialMap::new(coned, l.clone(), approx)?;
    let bond = collapse.compose(&approximation)?;
    Ok(Step { next, coned: approximation.source.clone(), collapse, approximation, bond })
}

/// The `(n+1)`-skeleton of an Edwards-Walsh complex over `K` with its
/// inclusion of `K^{(n)}`.
#[derive(Debug, Clone)]
pub struct EwSkeleton {
    pub chains: ChainComplex,
    pub skeleton: SimplicialComplex,
    pub inclusion: ChainMap,
}

/// `Z`: the chains of `K^{(n)}`. `Z/p`: those plus one `(n+1)`-cell per
/// `(n+1)`-simplex `σ`, attached with boundary `p·∂σ`.
pub fn ew_skeleton(k: &SimplicialComplex, group: Coefficients, n: usize) -> Result<EwSkeleton, HomologyError> {
    if n < 2 {
        return Err(HomologyError::Precondition(format!("Edwards-Walsh skeleton needs n >= 2, got {n}")));
    }
    let skeleton = k.skeleton(n);
    let base = skeleton.chain_complex().padded(n);
    let chains = match group {
        Coefficients::Z => base.clone(),
        Coefficients::Zmod(_) => {
            let p = group
                .prime_field()
                .ok_or_else(|| HomologyError::Unsupported(format!("Edwards-Walsh skeleton over {group}")))?;
            let scale = i64::try_from(p).map_err(|_| HomologyError::Overflow)?;
            let mut top = k.chain_complex().boundary(n + 1);
            for col in &mut top.cols {
                for e in col.iter_mut() {
                    e.1 = e.1.checked_mul(scale).ok_or(HomologyError::Overflow)?;
                }
            }
            let mut ranks = base.ranks().to_vec();
            let mut boundaries: Vec<SparseMatrix> = (0..=n).map(|d| base.boundary(d)).collect();
            ranks.push(top.ncols());
            boundaries.push(top);
            ChainComplex::new(ranks, boundaries)?
        }
        other => return Err(HomologyError::Unsupported(format!("Edwards-Walsh skeleton over {other}"))),
    };
    let maps = (0..=n).map(|d| identity(base.rank(d))).collect();
    let inclusion = ChainMap::new(base, chains.clone(), maps)?;
    Ok(EwSkeleton { chains, skeleton, inclusion })
}

fn identity(n: usize) -> SparseMatrix {
    SparseMatrix { rows: n, cols: (0..n).map(|i| vec![(i, 1)]).collect() }
}

/// `M(Z/m, n) = Sⁿ ∪_m e^{n+1}` as a cellular chain complex.
pub fn moore_space(m: u64, n: usize) -> Result<ChainComplex, HomologyError> {
    if m < 2 || n < 1 {
        return Err(HomologyError::Precondition(format!("Moore space needs m >= 2 and n >= 1, got m={m}, n={n}")));
    }
    let m = i64::try_from(m).map_err(|_| HomologyError::Overflow)?;
    let mut ranks = vec![0; n + 2];
    ranks[0] = 1;
    ranks[n] = 1;
    ranks[n + 1] = 1;
    let mut boundaries: Vec<SparseMatrix> = (0..n + 2).map(|k| SparseMatrix::zero(if k == 0 { 0 } else { ranks[k - 1] }, ranks[k])).collect();
    boundaries[n + 1].cols[0].push((0, m));
    ChainComplex::new(ranks, boundaries)
}

/// Two points, as a chain complex.
pub fn zero_sphere() -> ChainComplex {
    ChainComplex::new(vec![2], vec![SparseMatrix::zero(0, 2)]).expect("two points")
}

/// Reduced homology of the join `K ∗ L` from the shifted Künneth formula.
pub fn join_homology(k: &ChainComplex, l: &ChainComplex, coeff: Coefficients) -> Homology {
    let hk = reduced_integral_homology(k);
    let hl = reduced_integral_homology(l);
    let len = hk.len() + hl.len();
    let mut hz = vec![AbGroup::zero(); len];
    for (a, ga) in hk.iter().enumerate() {
        for (b, gb) in hl.iter().enumerate() {
            hz[a + b + 1] = hz[a + b + 1].direct_sum(&tensor_fg(ga, gb));
            if a + b + 2 < len {
                hz[a + b + 2] = hz[a + b + 2].direct_sum(&tor_fg(ga, gb));
            }
        }
    }
    Homology { coefficients: coeff, cohomology: false, groups: with_coefficients(&hz, coeff) }
}
