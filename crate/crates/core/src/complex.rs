//! Finite abstract simplicial complexes in facet representation.

use crate::arith::Int;
use crate::error::{Error, Result};
use crate::par;
use std::collections::{BTreeSet, HashSet};

/// Strictly increasing vertex labels. The empty face is allowed.
pub type Face = Vec<u32>;

/// Facet-set representation; faces are decided by inclusion in a facet.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SimplicialComplex {
    facets: Vec<Face>,
    vertex_count: u32,
}

/// Output of [`SimplicialComplex::contract_edge`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContractionResult {
    pub complex: SimplicialComplex,
    pub contracted_vertex: u32,
    /// Number of faces of the input with no distinct image: |faces(K)| - |faces(result)|.
    pub removed_second_copies: usize,
}

/// Per-edge outcome of the link condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkConditionReport {
    pub edges: Vec<(Face, bool)>,
}

impl LinkConditionReport {
    pub fn holds(&self) -> bool {
        self.edges.iter().all(|(_, ok)| *ok)
    }
    pub fn violations(&self) -> Vec<Face> {
        self.edges
            .iter()
            .filter(|(_, ok)| !ok)
            .map(|(e, _)| e.clone())
            .collect()
    }
}

/// Named generator families.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    CrossPolytopeBoundary(u32),
    SimplexBoundary(u32),
    Cycle(u32),
}

fn canonical_face(raw: &[u32]) -> Result<Face> {
    let mut f = raw.to_vec();
    f.sort_unstable();
    if f.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::MalformedFace(format!("{raw:?} repeats a vertex")));
    }
    Ok(f)
}

/// a ⊆ b for sorted slices.
pub fn is_subset(a: &[u32], b: &[u32]) -> bool {
    let mut j = 0;
    for x in a {
        while j < b.len() && b[j] < *x {
            j += 1;
        }
        if j == b.len() || b[j] != *x {
            return false;
        }
        j += 1;
    }
    true
}

fn all_subsets(f: &[u32], out: &mut Vec<Face>) {
    let n = f.len();
    for mask in 0u64..(1u64 << n) {
        let s: Face = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| f[i]).collect();
        out.push(s);
    }
}

impl SimplicialComplex {
    /// Builds a complex from facet lists, dropping dominated faces.
    /// An empty list gives the void complex; `[[]]` gives the complex {∅}.
    pub fn from_facets<L: AsRef<[u32]>>(facet_lists: &[L]) -> Result<Self> {
        let mut faces: Vec<Face> = facet_lists
            .iter()
            .map(|l| canonical_face(l.as_ref()))
            .collect::<Result<_>>()?;
        faces.sort();
        faces.dedup();
        Ok(Self::from_canonical(faces))
    }

    fn from_canonical(mut faces: Vec<Face>) -> Self {
        // larger faces first so domination only needs to look backwards
        faces.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
        faces.dedup();
        let mut kept: Vec<Face> = Vec::with_capacity(faces.len());
        for f in faces {
            if !kept.iter().any(|g| g.len() > f.len() && is_subset(&f, g)) {
                kept.push(f);
            }
        }
        kept.sort();
        let vertex_count = kept
            .iter()
            .flat_map(|f| f.iter().copied())
            .max()
            .map_or(0, |m| m + 1);
        SimplicialComplex {
            facets: kept,
            vertex_count,
        }
    }

    /// Generated families.
    pub fn generate(family: Family) -> Result<Self> {
        match family {
            Family::CrossPolytopeBoundary(d) => {
                if d < 1 {
                    return Err(Error::Range("cross polytope needs d >= 1".into()));
                }
                if d > 24 {
                    return Err(Error::SizeGuard(format!("cross polytope with d = {d}")));
                }
                let facets: Vec<Face> = (0u64..(1u64 << d))
                    .map(|mask| (0..d).map(|i| 2 * i + ((mask >> i) & 1) as u32).collect())
                    .collect();
                Self::from_facets(&facets)
            }
            Family::SimplexBoundary(d) => {
                if d < 1 {
                    return Err(Error::Range("simplex boundary needs d >= 1".into()));
                }
                let facets: Vec<Face> = (0..=d)
                    .map(|skip| (0..=d).filter(|&v| v != skip).collect())
                    .collect();
                Self::from_facets(&facets)
            }
            Family::Cycle(n) => {
                if n < 3 {
                    return Err(Error::Range("cycle needs n >= 3".into()));
                }
                let facets: Vec<Face> = (0..n).map(|i| vec![i, (i + 1) % n]).collect();
                Self::from_facets(&facets)
            }
        }
    }

    pub fn cross_polytope_boundary(d: u32) -> Result<Self> {
        Self::generate(Family::CrossPolytopeBoundary(d))
    }
    pub fn simplex_boundary(d: u32) -> Result<Self> {
        Self::generate(Family::SimplexBoundary(d))
    }
    pub fn cycle(n: u32) -> Result<Self> {
        Self::generate(Family::Cycle(n))
    }

    pub fn facets(&self) -> &[Face] {
        &self.facets
    }
    /// One more than the largest label (labels need not be contiguous).
    pub fn vertex_count(&self) -> u32 {
        self.vertex_count
    }
    pub fn is_void(&self) -> bool {
        self.facets.is_empty()
    }
    /// Maximum facet dimension; -1 for {∅}; None for the void complex.
    pub fn dim(&self) -> Option<i64> {
        self.facets.iter().map(|f| f.len() as i64 - 1).max()
    }
    /// The parameter d with dim = d - 1.
    pub fn d(&self) -> usize {
        self.dim().map_or(0, |x| (x + 1) as usize)
    }
    pub fn is_pure(&self) -> bool {
        self.facets.windows(2).all(|w| w[0].len() == w[1].len())
    }
    pub fn contains(&self, face: &[u32]) -> bool {
        match canonical_face(face) {
            Ok(f) => self.facets.iter().any(|g| is_subset(&f, g)),
            Err(_) => false,
        }
    }
    /// Upper bound on subset enumerations needed to list all faces.
    pub fn enumeration_cost(&self) -> u128 {
        self.facets.iter().map(|f| 1u128 << f.len().min(127)).sum()
    }

    /// All faces grouped by size (index = cardinality), sorted within each group.
    pub fn faces_by_size(&self) -> Vec<Vec<Face>> {
        let d = self.d();
        let mut sets: Vec<BTreeSet<Face>> = vec![BTreeSet::new(); d + 1];
        if self.is_void() {
            return vec![];
        }
        let mut buf = Vec::new();
        for f in &self.facets {
            buf.clear();
            all_subsets(f, &mut buf);
            for s in buf.drain(..) {
                sets[s.len()].insert(s);
            }
        }
        sets.into_iter().map(|s| s.into_iter().collect()).collect()
    }

    /// All faces, empty face included.
    pub fn face_set(&self) -> HashSet<Face> {
        let mut out = HashSet::new();
        let mut buf = Vec::new();
        for f in &self.facets {
            buf.clear();
            all_subsets(f, &mut buf);
            out.extend(buf.drain(..));
        }
        out
    }

    pub fn total_faces(&self) -> usize {
        self.face_set().len()
    }

    /// (f_0, ..., f_{d-1}); f_{-1} = 1 is implicit for nonvoid complexes.
    pub fn f_vector(&self) -> Vec<Int> {
        self.faces_by_size()
            .iter()
            .skip(1)
            .map(|g| Int::from(g.len()))
            .collect()
    }

    /// f_{-1}; 1 for every nonvoid complex.
    pub fn f_minus_one(&self) -> Int {
        Int::from(u8::from(!self.is_void()))
    }

    /// h-vector of length d + 1.
    pub fn h_vector(&self) -> Vec<Int> {
        crate::vectors::f_to_h(&self.f_vector(), self.d()).expect("f-vector length matches d")
    }

    pub fn vertices(&self) -> Vec<u32> {
        let set: BTreeSet<u32> = self.facets.iter().flatten().copied().collect();
        set.into_iter().collect()
    }

    pub fn edges(&self) -> Vec<Face> {
        let mut set = BTreeSet::new();
        for f in &self.facets {
            for i in 0..f.len() {
                for j in i + 1..f.len() {
                    set.insert(vec![f[i], f[j]]);
                }
            }
        }
        set.into_iter().collect()
    }

    /// lk(F) = {G : G ∩ F = ∅, G ∪ F ∈ K}.
    pub fn link(&self, face: &[u32]) -> Result<Self> {
        let f = canonical_face(face)?;
        let gens: Vec<Face> = self
            .facets
            .iter()
            .filter(|g| is_subset(&f, g))
            .map(|g| g.iter().copied().filter(|v| f.binary_search(v).is_err()).collect())
            .collect();
        if gens.is_empty() {
            return Err(Error::AbsentFace(f));
        }
        Ok(Self::from_canonical(gens))
    }

    /// Checks lk(a) ∩ lk(b) = lk({a,b}) for every edge.
    pub fn check_link_condition(&self) -> Result<LinkConditionReport> {
        if !self.is_pure() || self.dim().unwrap_or(-1) < 1 {
            return Err(Error::Range(
                "link condition needs a pure complex of dimension >= 1".into(),
            ));
        }
        let verts = self.vertices();
        let vlinks: Vec<HashSet<Face>> = par::map(&verts, |v| {
            self.link(&[*v]).expect("vertex is present").face_set()
        });
        let index = |v: u32| verts.binary_search(&v).expect("edge vertex is present");
        let edges = self.edges();
        let verdicts = par::map(&edges, |e| {
            let la = &vlinks[index(e[0])];
            let lb = &vlinks[index(e[1])];
            let le = self.link(e).expect("edge is present").face_set();
            let (small, big) = if la.len() <= lb.len() { (la, lb) } else { (lb, la) };
            let mut count = 0usize;
            for g in small {
                if big.contains(g) {
                    if !le.contains(g) {
                        return false;
                    }
                    count += 1;
                }
            }
            count == le.len()
        });
        Ok(LinkConditionReport {
            edges: edges.into_iter().zip(verdicts).collect(),
        })
    }

    fn require_edge(&self, e: &[u32]) -> Result<(u32, u32)> {
        let f = canonical_face(e)?;
        if f.len() != 2 || !self.contains(&f) {
            return Err(Error::AbsentFace(f));
        }
        Ok((f[0], f[1]))
    }

    /// Identifies the endpoints of an edge, keeping the smaller label.
    pub fn contract_edge(&self, e: &[u32]) -> Result<ContractionResult> {
        let (a, b) = self.require_edge(e)?;
        let images: Vec<Face> = self
            .facets
            .iter()
            .map(|f| {
                if f.binary_search(&b).is_err() {
                    return f.clone();
                }
                let mut g: Face = f.iter().copied().filter(|&v| v != b).collect();
                if g.binary_search(&a).is_err() {
                    g.push(a);
                    g.sort_unstable();
                }
                g
            })
            .collect();
        let complex = Self::from_canonical(images);
        let removed = self.total_faces() - complex.total_faces();
        Ok(ContractionResult {
            complex,
            contracted_vertex: a,
            removed_second_copies: removed,
        })
    }

    /// Stellar subdivision of an edge with new vertex `vertex_count()`.
    pub fn stellar_subdivide_edge(&self, e: &[u32]) -> Result<Self> {
        let (a, b) = self.require_edge(e)?;
        let w = self.vertex_count;
        let mut out = Vec::with_capacity(self.facets.len() + 4);
        for f in &self.facets {
            if f.binary_search(&a).is_ok() && f.binary_search(&b).is_ok() {
                for drop in [a, b] {
                    let mut g: Face = f.iter().copied().filter(|&v| v != drop).collect();
                    g.push(w);
                    out.push(g);
                }
            } else {
                out.push(f.clone());
            }
        }
        Ok(Self::from_canonical(out))
    }

    /// Subdivides every original edge once, in the given order (default lexicographic).
    pub fn tchebyshev_subdivision(&self, edge_order: Option<&[Face]>) -> Result<Self> {
        let edges = self.edges();
        if edges.is_empty() {
            return Err(Error::Range("complex has no edges".into()));
        }
        let order: Vec<Face> = match edge_order {
            None => edges.clone(),
            Some(o) => {
                let canon: Vec<Face> = o.iter().map(|e| canonical_face(e)).collect::<Result<_>>()?;
                let mut sorted = canon.clone();
                sorted.sort();
                if sorted != edges {
                    return Err(Error::BadOrder(
                        "order is not a permutation of the original edges".into(),
                    ));
                }
                canon
            }
        };
        let mut k = self.clone();
        for e in &order {
            k = k.stellar_subdivide_edge(e)?;
        }
        Ok(k)
    }

    /// Euler characteristic Σ(-1)^i f_i.
    pub fn euler_characteristic(&self) -> Int {
        self.f_vector()
            .iter()
            .enumerate()
            .map(|(i, f)| if i % 2 == 0 { f.clone() } else { -f })
            .sum()
    }

    /// Canonical text form: one facet per line.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for f in &self.facets {
            let line: Vec<String> = f.iter().map(|v| v.to_string()).collect();
            s.push_str(&line.join(" "));
            s.push('\n');
        }
        s
    }

    /// Parses whitespace-separated facets, one per line, with `#` comments,
    /// or the JSON form {"facets": [[...], ...]}.
    pub fn parse(src: &str) -> Result<Self> {
        let trimmed = src.trim_start();
        if trimmed.starts_with('{') {
            return Self::parse_json(trimmed);
        }
        let mut facets = Vec::new();
        for (lineno, line) in src.lines().enumerate() {
            let body = line.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let face = body
                .split_whitespace()
                .map(|t| {
                    t.parse::<u32>().map_err(|_| {
                        Error::Parse(format!("line {}: bad vertex label {t:?}", lineno + 1))
                    })
                })
                .collect::<Result<Vec<u32>>>()?;
            facets.push(face);
        }
        Self::from_facets(&facets)
    }

    fn parse_json(src: &str) -> Result<Self> {
        let v: serde_json::Value =
            serde_json::from_str(src).map_err(|e| Error::Parse(e.to_string()))?;
        let arr = v
            .get("facets")
            .and_then(|f| f.as_array())
            .ok_or_else(|| Error::Parse("expected {\"facets\": [[...]]}".into()))?;
        let mut facets = Vec::with_capacity(arr.len());
        for (i, f) in arr.iter().enumerate() {
            let list = f
                .as_array()
                .ok_or_else(|| Error::Parse(format!("facet {i} is not an array")))?;
            let face = list
                .iter()
                .map(|x| {
                    x.as_u64()
                        .and_then(|n| u32::try_from(n).ok())
                        .ok_or_else(|| Error::Parse(format!("facet {i}: bad label {x}")))
                })
                .collect::<Result<Vec<u32>>>()?;
            facets.push(face);
        }
        Self::from_facets(&facets)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<Int> {
        v.iter().map(|&x| Int::from(x)).collect()
    }

    #[test]
    fn from_facets_cases() {
        let k = SimplicialComplex::from_facets(&[vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap();
        assert_eq!(k.dim(), Some(1));
        assert_eq!(k.facets().len(), 3);
        let k = SimplicialComplex::from_facets(&[vec![0, 1, 2], vec![0, 1]]).unwrap();
        assert_eq!(k.facets(), &[vec![0, 1, 2]]);
        assert!(matches!(
            SimplicialComplex::from_facets(&[vec![0, 0, 1]]),
            Err(Error::MalformedFace(_))
        ));
    }

    #[test]
    fn f_vectors() {
        let oct = SimplicialComplex::cross_polytope_boundary(3).unwrap();
        assert_eq!(oct.f_vector(), ints(&[6, 12, 8]));
        let c4 = SimplicialComplex::cross_polytope_boundary(4).unwrap();
        assert_eq!(c4.f_vector(), ints(&[8, 24, 32, 16]));
        let pt = SimplicialComplex::from_facets(&[vec![5]]).unwrap();
        assert_eq!(pt.f_vector(), ints(&[1]));
    }

    #[test]
    fn links() {
        let oct = SimplicialComplex::cross_polytope_boundary(3).unwrap();
        let l = oct.link(&[0]).unwrap();
        assert_eq!(l.f_vector(), ints(&[4, 4]));
        let c4 = SimplicialComplex::cross_polytope_boundary(4).unwrap();
        for e in c4.edges() {
            assert_eq!(c4.link(&e).unwrap().f_vector(), ints(&[4, 4]));
        }
        let k = SimplicialComplex::from_facets(&[vec![0, 1]]).unwrap();
        let l = k.link(&[0, 1]).unwrap();
        assert_eq!(l.facets(), &[Vec::<u32>::new()]);
        assert!(matches!(oct.link(&[0, 1]), Err(Error::AbsentFace(_))));
    }

    #[test]
    fn link_condition_cases() {
        for d in 2..=5 {
            let k = SimplicialComplex::cross_polytope_boundary(d).unwrap();
            assert!(k.check_link_condition().unwrap().holds());
        }
        let tri = SimplicialComplex::simplex_boundary(2).unwrap();
        let r = tri.check_link_condition().unwrap();
        assert_eq!(r.violations().len(), 3);
        let path = SimplicialComplex::from_facets(&[vec![0, 1], vec![1, 2]]).unwrap();
        let r = path.check_link_condition().unwrap();
        assert_eq!(r.edges[0], (vec![0, 1], true));
    }

    #[test]
    fn contraction_cases() {
        let c4 = SimplicialComplex::cross_polytope_boundary(4).unwrap();
        let r = c4.contract_edge(&[0, 2]).unwrap();
        assert_eq!(r.contracted_vertex, 0);
        assert_eq!(r.complex.h_vector(), ints(&[1, 3, 4, 3, 1]));
        let sq = SimplicialComplex::cycle(4).unwrap();
        let r = sq.contract_edge(&[0, 1]).unwrap();
        assert_eq!(r.complex.f_vector(), ints(&[3, 3]));
        assert_eq!(r.removed_second_copies, 2);
        let oct = SimplicialComplex::cross_polytope_boundary(3).unwrap();
        let r = oct.contract_edge(&[0, 2]).unwrap();
        assert_eq!(r.complex.f_vector(), ints(&[5, 9, 6]));
        assert!(oct.contract_edge(&[0, 1]).is_err());
    }

    #[test]
    fn subdivision_cases() {
        let tri = SimplicialComplex::cycle(3).unwrap();
        let s = tri.stellar_subdivide_edge(&[0, 1]).unwrap();
        assert_eq!(s.f_vector(), ints(&[4, 4]));
        let oct = SimplicialComplex::cross_polytope_boundary(3).unwrap();
        let s = oct.stellar_subdivide_edge(&[0, 2]).unwrap();
        assert_eq!(s.f_vector(), ints(&[7, 15, 10]));
        let seg = SimplicialComplex::from_facets(&[vec![0, 1]]).unwrap();
        let s = seg.stellar_subdivide_edge(&[0, 1]).unwrap();
        assert_eq!(s.facets(), &[vec![0, 2], vec![1, 2]]);
        let t = tri.tchebyshev_subdivision(None).unwrap();
        assert_eq!(t.f_vector(), ints(&[6, 6]));
        let bad = tri.tchebyshev_subdivision(Some(&[vec![0, 1]]));
        assert!(matches!(bad, Err(Error::BadOrder(_))));
    }

    #[test]
    fn parsing() {
        let k = SimplicialComplex::parse("# square\n0 1\n1 2\n2 3\n3 0\n").unwrap();
        assert_eq!(k, SimplicialComplex::cycle(4).unwrap());
        let j = SimplicialComplex::parse("{\"facets\": [[0,1],[1,2],[2,3],[0,3]]}").unwrap();
        assert_eq!(j, k);
        assert_eq!(k.to_text(), "0 1\n0 3\n1 2\n2 3\n");
        assert!(SimplicialComplex::parse("0 x\n").is_err());
    }
}
