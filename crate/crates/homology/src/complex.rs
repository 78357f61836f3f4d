use std::collections::{BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

use crate::snf::SparseMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomologyError {
    #[error("not a subcomplex: {0:?} is missing from the ambient complex")]
    NotSubcomplex(Vec<usize>),
    #[error("simplex {0:?} is not closed under faces")]
    NotClosed(Vec<usize>),
    #[error("vertex {0} out of range")]
    Vertex(usize),
    #[error("image of {0:?} is not a simplex of the target")]
    NotSimplicial(Vec<usize>),
    #[error("the map does not send the subcomplex into the target subcomplex at {0:?}")]
    PairMismatch(Vec<usize>),
    #[error("boundary of boundary is nonzero in degree {0}")]
    BoundarySquare(usize),
    #[error("chain map does not commute with boundaries in degree {0}")]
    NotChainMap(usize),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("size limit exceeded: {0}")]
    SizeLimit(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("integer overflow in chain computation")]
    Overflow,
}

/// A finite simplicial complex on vertices `0..vertex_count`; simplices are
/// sorted vertex tuples and oriented by that order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertex_count: usize,
    cells: Vec<Vec<Vec<usize>>>,
    index: Vec<HashMap<Vec<usize>, usize>>,
}

fn faces(s: &[usize]) -> impl Iterator<Item = Vec<usize>> + '_ {
    (0..s.len()).map(move |i| s.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &v)| v).collect())
}

impl SimplicialComplex {
    fn build(vertex_count: usize, all: BTreeSet<Vec<usize>>) -> SimplicialComplex {
        let top = all.iter().map(Vec::len).max().unwrap_or(0);
        let mut cells: Vec<Vec<Vec<usize>>> = vec![Vec::new(); top];
        for s in all {
            cells[s.len() - 1].push(s);
        }
        for c in &mut cells {
            c.sort();
        }
        let index = cells.iter().map(|c| c.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect()).collect();
        SimplicialComplex { vertex_count, cells, index }
    }

    fn normalize(vertex_count: usize, s: &[usize]) -> Result<Vec<usize>, HomologyError> {
        let mut t = s.to_vec();
        t.sort_unstable();
        t.dedup();
        match t.iter().find(|&&v| v >= vertex_count) {
            Some(&v) => Err(HomologyError::Vertex(v)),
            None => Ok(t),
        }
    }

    /// The closure under faces of the given simplices.
    pub fn from_facets<I, S>(vertex_count: usize, facets: I) -> Result<SimplicialComplex, HomologyError>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<[usize]>,
    {
        let mut all = BTreeSet::new();
        let mut stack: Vec<Vec<usize>> = Vec::new();
        for f in facets {
            let t = Self::normalize(vertex_count, f.as_ref())?;
            if !t.is_empty() {
                stack.push(t);
            }
        }
        while let Some(s) = stack.pop() {
            if s.len() > 1 {
                stack.extend(faces(&s).filter(|f| !all.contains(f)));
            }
            all.insert(s);
        }
        Ok(Self::build(vertex_count, all))
    }

    /// Accepts the list only when it is already closed under faces.
    pub fn new<I, S>(vertex_count: usize, simplices: I) -> Result<SimplicialComplex, HomologyError>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<[usize]>,
    {
        let mut all = BTreeSet::new();
        for s in simplices {
            let t = Self::normalize(vertex_count, s.as_ref())?;
            if !t.is_empty() {
                all.insert(t);
            }
        }
        for s in &all {
            if s.len() > 1 && faces(s).any(|f| !all.contains(&f)) {
                return Err(HomologyError::NotClosed(s.clone()));
            }
        }
        Ok(Self::build(vertex_count, all))
    }

    /// The full simplex on `n + 1` vertices.
    pub fn simplex(n: usize) -> SimplicialComplex {
        Self::from_facets(n + 1, [(0..=n).collect::<Vec<_>>()]).expect("valid")
    }

    /// The boundary of the `n`-simplex.
    pub fn simplex_boundary(n: usize) -> SimplicialComplex {
        let full: Vec<usize> = (0..=n).collect();
        Self::from_facets(n + 1, faces(&full).collect::<Vec<_>>()).expect("valid")
    }

    /// A `k`-gon on vertices `0..k`.
    pub fn polygon(k: usize) -> SimplicialComplex {
        Self::from_facets(k, (0..k).map(|i| vec![i, (i + 1) % k])).expect("valid")
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    /// Dimension; −1 for the empty complex.
    pub fn dim(&self) -> isize {
        self.cells.len() as isize - 1
    }

    pub fn cells(&self, k: usize) -> &[Vec<usize>] {
        self.cells.get(k).map_or(&[], Vec::as_slice)
    }

    pub fn index_of(&self, s: &[usize]) -> Option<usize> {
        self.index.get(s.len().checked_sub(1)?)?.get(s).copied()
    }

    pub fn contains(&self, s: &[usize]) -> bool {
        self.index_of(s).is_some()
    }

    pub fn len(&self) -> usize {
        self.cells.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn simplices(&self) -> impl Iterator<Item = &Vec<usize>> {
        self.cells.iter().flatten()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.cells.iter().enumerate().map(|(k, c)| if k % 2 == 0 { c.len() as i64 } else { -(c.len() as i64) }).sum()
    }

    pub fn skeleton(&self, n: usize) -> SimplicialComplex {
        let all: BTreeSet<Vec<usize>> = self.cells.iter().take(n + 1).flatten().cloned().collect();
        Self::build(self.vertex_count, all)
    }

    pub fn is_subcomplex_of(&self, other: &SimplicialComplex) -> Result<(), HomologyError> {
        match self.simplices().find(|s| !other.contains(s)) {
            Some(s) => Err(HomologyError::NotSubcomplex(s.clone())),
            None => Ok(()),
        }
    }

    /// Simplicial chain complex with sorted-vertex orientations.
    pub fn chain_complex(&self) -> ChainComplex {
        self.relative_chains(None).expect("absolute chains")
    }

    /// Chains of `self` modulo the subcomplex `sub`.
    pub fn relative_chain_complex(&self, sub: &SimplicialComplex) -> Result<ChainComplex, HomologyError> {
        sub.is_subcomplex_of(self)?;
        self.relative_chains(Some(sub))
    }

    /// Basis positions of the quotient chains: `Some(i)` for cells outside `sub`.
    fn quotient_index(&self, sub: Option<&SimplicialComplex>) -> Vec<Vec<Option<usize>>> {
        self.cells
            .iter()
            .map(|cells| {
                let mut next = 0;
                cells
                    .iter()
                    .map(|s| {
                        if sub.is_some_and(|a| a.contains(s)) {
                            None
                        } else {
                            next += 1;
                            Some(next - 1)
                        }
                    })
                    .collect()
            })
            .collect()
    }

    fn relative_chains(&self, sub: Option<&SimplicialComplex>) -> Result<ChainComplex, HomologyError> {
        let q = self.quotient_index(sub);
        let ranks: Vec<usize> = q.iter().map(|v| v.iter().flatten().count()).collect();
        let mut boundaries = vec![SparseMatrix::zero(0, ranks.first().copied().unwrap_or(0))];
        for k in 1..self.cells.len() {
            let mut m = SparseMatrix::zero(ranks[k - 1], ranks[k]);
            for (s, pos) in self.cells[k].iter().zip(&q[k]) {
                let Some(j) = pos else { continue };
                for (i, f) in faces(s).enumerate() {
                    let row = q[k - 1][self.index[k - 1][&f]];
                    if let Some(r) = row {
                        m.cols[*j].push((r, if i % 2 == 0 { 1 } else { -1 }));
                    }
                }
            }
            boundaries.push(m);
        }
        ChainComplex::new(ranks, boundaries)
    }

    /// Parses one simplex per line as space-separated vertex indices; blank
    /// lines and `#` comments are skipped. Faces are added.
    pub fn parse(text: &str) -> Result<SimplicialComplex, HomologyError> {
        let mut facets = Vec::new();
        for (n, line) in text.lines().enumerate() {
            let body = line.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let s: Result<Vec<usize>, _> = body.split_whitespace().map(str::parse).collect();
            facets.push(s.map_err(|e| HomologyError::Parse { line: n + 1, msg: e.to_string() })?);
        }
        let count = facets.iter().flatten().max().map_or(0, |m| m + 1);
        Self::from_facets(count, facets)
    }
}

impl fmt::Display for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in self.simplices() {
            let line: Vec<String> = s.iter().map(|v| v.to_string()).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

/// A vertex map that sends every simplex onto a simplex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialMap {
    pub source: SimplicialComplex,
    pub target: SimplicialComplex,
    pub vertices: Vec<usize>,
}

impl SimplicialMap {
    pub fn new(source: SimplicialComplex, target: SimplicialComplex, vertices: Vec<usize>) -> Result<Self, HomologyError> {
        if vertices.len() != source.vertex_count() {
            return Err(HomologyError::Shape(format!(
                "{} vertex images for {} vertices",
                vertices.len(),
                source.vertex_count()
            )));
        }
        let map = SimplicialMap { source, target, vertices };
        for s in map.source.simplices() {
            if !map.target.contains(&map.image(s)) {
                return Err(HomologyError::NotSimplicial(s.clone()));
            }
        }
        Ok(map)
    }

    /// The image vertex set, sorted and deduplicated.
    pub fn image(&self, s: &[usize]) -> Vec<usize> {
        let mut t: Vec<usize> = s.iter().map(|&v| self.vertices[v]).collect();
        t.sort_unstable();
        t.dedup();
        t
    }

    /// Oriented image: `None` when the simplex collapses, else the sorted
    /// image and the sign of the sorting permutation.
    fn oriented_image(&self, s: &[usize]) -> Option<(Vec<usize>, i64)> {
        let mut t: Vec<usize> = s.iter().map(|&v| self.vertices[v]).collect();
        let mut sign = 1;
        for i in 0..t.len() {
            for j in 0..t.len() - 1 - i {
                match t[j].cmp(&t[j + 1]) {
                    std::cmp::Ordering::Greater => {
                        t.swap(j, j + 1);
                        sign = -sign;
                    }
                    std::cmp::Ordering::Equal => return None,
                    std::cmp::Ordering::Less => {}
                }
            }
        }
        Some((t, sign))
    }

    pub fn compose(&self, after: &SimplicialMap) -> Result<SimplicialMap, HomologyError> {
        let vs = self.vertices.iter().map(|&v| after.vertices[v]).collect();
        SimplicialMap::new(self.source.clone(), after.target.clone(), vs)
    }

    pub fn chain_map(&self) -> ChainMap {
        self.relative_chain_map(None).expect("absolute map")
    }

    /// The induced map of pairs `(source, a) → (target, b)`.
    pub fn relative_chain_map(
        &self,
        pairs: Option<(&SimplicialComplex, &SimplicialComplex)>,
    ) -> Result<ChainMap, HomologyError> {
        let (src, tgt) = match pairs {
            None => (self.source.chain_complex(), self.target.chain_complex()),
            Some((a, b)) => {
                for s in a.simplices() {
                    if !b.contains(&self.image(s)) {
                        return Err(HomologyError::PairMismatch(s.clone()));
                    }
                }
                (self.source.relative_chain_complex(a)?, self.target.relative_chain_complex(b)?)
            }
        };
        let qs = self.source.quotient_index(pairs.map(|p| p.0));
        let qt = self.target.quotient_index(pairs.map(|p| p.1));
        let mut maps = Vec::new();
        for k in 0..src.ranks.len() {
            let mut m = SparseMatrix::zero(tgt.rank(k), src.rank(k));
            for (s, pos) in self.source.cells(k).iter().zip(&qs[k]) {
                let Some(j) = pos else { continue };
                let Some((img, sign)) = self.oriented_image(s) else { continue };
                let idx = self.target.index[k][&img];
                if let Some(i) = qt[k][idx] {
                    m.cols[*j].push((i, sign));
                }
            }
            maps.push(m);
        }
        ChainMap::new(src, tgt, maps)
    }

    /// Parses `v -> w` lines into a vertex map.
    pub fn parse_vertex_map(text: &str, vertex_count: usize) -> Result<Vec<usize>, HomologyError> {
        let mut out = vec![None; vertex_count];
        for (n, line) in text.lines().enumerate() {
            let body = line.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let err = |msg: &str| HomologyError::Parse { line: n + 1, msg: msg.to_string() };
            let (a, b) = body.split_once("->").ok_or_else(|| err("expected 'v -> w'"))?;
            let v: usize = a.trim().parse().map_err(|_| err("bad source vertex"))?;
            let w: usize = b.trim().parse().map_err(|_| err("bad target vertex"))?;
            *out.get_mut(v).ok_or(HomologyError::Vertex(v))? = Some(w);
        }
        out.into_iter()
            .enumerate()
            .map(|(v, w)| w.ok_or(HomologyError::Parse { line: 0, msg: format!("vertex {v} has no image") }))
            .collect()
    }
}

/// A bounded chain complex of free abelian groups in degrees `0..ranks.len()`.
/// `boundaries[k]` maps degree `k` to degree `k − 1`; `boundaries[0]` is the
/// zero map to the empty group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainComplex {
    ranks: Vec<usize>,
    boundaries: Vec<SparseMatrix>,
}

impl ChainComplex {
    /// Checks shapes and `∂ ∘ ∂ = 0`.
    pub fn new(ranks: Vec<usize>, boundaries: Vec<SparseMatrix>) -> Result<ChainComplex, HomologyError> {
        if boundaries.len() != ranks.len() {
            return Err(HomologyError::Shape(format!("{} boundaries for {} degrees", boundaries.len(), ranks.len())));
        }
        for (k, b) in boundaries.iter().enumerate() {
            let rows = if k == 0 { 0 } else { ranks[k - 1] };
            if b.rows != rows || b.ncols() != ranks[k] || b.cols.iter().flatten().any(|&(i, _)| i >= rows) {
                return Err(HomologyError::Shape(format!("boundary in degree {k}")));
            }
        }
        for k in 2..ranks.len() {
            let sq = boundaries[k - 1].compose(&boundaries[k]).ok_or(HomologyError::Overflow)?;
            if !sq.is_zero() {
                return Err(HomologyError::BoundarySquare(k));
            }
        }
        Ok(ChainComplex { ranks, boundaries })
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn rank(&self, k: usize) -> usize {
        self.ranks.get(k).copied().unwrap_or(0)
    }

    /// Highest degree carrying chains, or `None` when empty.
    pub fn top(&self) -> Option<usize> {
        self.ranks.iter().rposition(|&r| r > 0)
    }

    /// `∂_k`, the zero matrix outside the stored range.
    pub fn boundary(&self, k: usize) -> SparseMatrix {
        match self.boundaries.get(k) {
            Some(b) => b.clone(),
            None => SparseMatrix::zero(self.rank(k.saturating_sub(1)), self.rank(k)),
        }
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.ranks.iter().enumerate().map(|(k, &r)| if k % 2 == 0 { r as i64 } else { -(r as i64) }).sum()
    }

    /// Pads with zero groups up to degree `top`.
    pub fn padded(&self, top: usize) -> ChainComplex {
        let mut c = self.clone();
        while c.ranks.len() <= top {
            let k = c.ranks.len();
            c.boundaries.push(SparseMatrix::zero(c.rank(k - 1), 0));
            c.ranks.push(0);
        }
        c
    }

    /// The cochain complex regraded as a chain complex: degree `k` holds
    /// `Cᵗᵒᵖ⁻ᵏ` and the boundary is the transposed coboundary.
    pub fn dual(&self, top: usize) -> ChainComplex {
        let c = self.padded(top);
        let ranks: Vec<usize> = (0..=top).map(|k| c.rank(top - k)).collect();
        let mut boundaries = vec![SparseMatrix::zero(0, ranks[0])];
        for k in 1..=top {
            // D_k = C^{top−k} → D_{k−1} = C^{top−k+1}, the transpose of ∂_{top−k+1}
            boundaries.push(c.boundary(top - k + 1).transpose());
        }
        ChainComplex::new(ranks, boundaries).expect("dual of a chain complex")
    }
}

/// Degreewise matrices `f_k : C_k → D_k` commuting with the boundaries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainMap {
    pub source: ChainComplex,
    pub target: ChainComplex,
    pub maps: Vec<SparseMatrix>,
}

impl ChainMap {
    pub fn new(source: ChainComplex, target: ChainComplex, maps: Vec<SparseMatrix>) -> Result<ChainMap, HomologyError> {
        let map = ChainMap { source, target, maps };
        for k in 0..map.source.ranks.len() {
            let f = map.map(k);
            if f.rows != map.target.rank(k) || f.ncols() != map.source.rank(k) {
                return Err(HomologyError::Shape(format!("chain map in degree {k}")));
            }
        }
        for k in 1..map.source.ranks.len() {
            let a = map.target.boundary(k).compose(&map.map(k)).ok_or(HomologyError::Overflow)?;
            let b = map.map(k - 1).compose(&map.source.boundary(k)).ok_or(HomologyError::Overflow)?;
            // compose yields sorted columns without zeros, so equality is exact
            if a != b {
                return Err(HomologyError::NotChainMap(k));
            }
        }
        Ok(map)
    }

    pub fn map(&self, k: usize) -> SparseMatrix {
        match self.maps.get(k) {
            Some(m) => m.clone(),
            None => SparseMatrix::zero(self.target.rank(k), self.source.rank(k)),
        }
    }

    /// The cochain map `Hom(D) → Hom(C)` regraded like `ChainComplex::dual`.
    pub fn dual(&self, top: usize) -> ChainMap {
        let maps = (0..=top).map(|k| self.map(top - k).transpose()).collect();
        ChainMap::new(self.target.dual(top), self.source.dual(top), maps).expect("dual of a chain map")
    }
}
