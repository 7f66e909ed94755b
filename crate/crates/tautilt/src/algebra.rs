//! Bound quiver algebras with an explicit word basis and multiplication table.
//!
//! Conventions: arrows compose like functions but words are stored in traversal
//! order, so the word of `b · c` ("b after c") is `c.word ++ b.word`. A basis
//! element with source `i` and target `j` lies in the block `e_j A e_i`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Mutex};

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactlin::{Echelon, Mat, Scalar};

static NEXT_UID: AtomicU64 = AtomicU64::new(1);

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arrow {
    pub label: String,
    pub src: usize,
    pub tgt: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Quiver {
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn new(vertices: Vec<String>, arrows: Vec<Arrow>) -> Result<Self> {
        let q = Quiver { vertices, arrows };
        q.validate()?;
        Ok(q)
    }

    /// Convenience constructor from vertex labels and `(label, src label, tgt label)` triples.
    pub fn from_labels(vertices: &[&str], arrows: &[(&str, &str, &str)]) -> Result<Self> {
        let vs: Vec<String> = vertices.iter().map(|s| s.to_string()).collect();
        let find = |l: &str| {
            vs.iter()
                .position(|v| v == l)
                .ok_or_else(|| Error::InvalidQuiver(format!("unknown vertex {l:?}")))
        };
        let arrows = arrows
            .iter()
            .map(|(l, s, t)| {
                Ok(Arrow {
                    label: l.to_string(),
                    src: find(s)?,
                    tgt: find(t)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Quiver::new(vs, arrows)
    }

    /// Linearly oriented quiver `1 → 2 → … → n` with arrows `a1, a2, …`.
    pub fn linear(n: usize) -> Self {
        let vertices = (1..=n).map(|i| i.to_string()).collect();
        let arrows = (1..n)
            .map(|i| Arrow {
                label: format!("a{i}"),
                src: i - 1,
                tgt: i,
            })
            .collect();
        Quiver { vertices, arrows }
    }

    fn validate(&self) -> Result<()> {
        if !self.vertices.iter().all_unique() {
            return Err(Error::InvalidQuiver("duplicate vertex label".into()));
        }
        if !self.arrows.iter().map(|a| &a.label).all_unique() {
            return Err(Error::InvalidQuiver("duplicate arrow label".into()));
        }
        if self
            .vertices
            .iter()
            .any(|v| self.arrows.iter().any(|a| &a.label == v))
        {
            return Err(Error::InvalidQuiver(
                "a label is used for both a vertex and an arrow".into(),
            ));
        }
        let n = self.vertices.len();
        if let Some(a) = self.arrows.iter().find(|a| a.src >= n || a.tgt >= n) {
            return Err(Error::InvalidQuiver(format!(
                "arrow {} has an undeclared endpoint",
                a.label
            )));
        }
        Ok(())
    }

    pub fn n_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn arrow_index(&self, label: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.label == label)
    }

    pub fn vertex_index(&self, label: &str) -> Option<usize> {
        self.vertices.iter().position(|a| a == label)
    }

    pub fn is_acyclic(&self) -> bool {
        let n = self.n_vertices();
        let mut indeg = vec![0usize; n];
        for a in &self.arrows {
            indeg[a.tgt] += 1;
        }
        let mut stack: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = stack.pop() {
            seen += 1;
            for a in self.arrows.iter().filter(|a| a.src == v) {
                indeg[a.tgt] -= 1;
                if indeg[a.tgt] == 0 {
                    stack.push(a.tgt);
                }
            }
        }
        seen == n
    }

    /// Length of the longest path; `None` if there is an oriented cycle.
    pub fn longest_path(&self) -> Option<usize> {
        if !self.is_acyclic() {
            return None;
        }
        let n = self.n_vertices();
        let mut best = vec![0usize; n];
        for _ in 0..n {
            for a in &self.arrows {
                best[a.tgt] = best[a.tgt].max(best[a.src] + 1);
            }
        }
        Some(best.into_iter().max().unwrap_or(0))
    }

    pub fn opposite(&self) -> Quiver {
        Quiver {
            vertices: self.vertices.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|a| Arrow {
                    label: a.label.clone(),
                    src: a.tgt,
                    tgt: a.src,
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub coeff: Scalar,
    /// Arrow indices in traversal order.
    pub path: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub terms: Vec<Term>,
}

impl Relation {
    pub fn new(terms: Vec<Term>) -> Self {
        Relation { terms }
    }

    /// Builds a relation from `(coefficient, arrow labels in traversal order)` pairs.
    pub fn from_labels(q: &Quiver, terms: &[(i64, &[&str])]) -> Result<Self> {
        let terms = terms
            .iter()
            .map(|(c, p)| {
                let path = p
                    .iter()
                    .map(|l| {
                        q.arrow_index(l)
                            .ok_or_else(|| Error::InvalidQuiver(format!("unknown arrow {l:?}")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(Term {
                    coeff: Scalar::from(*c),
                    path,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Relation { terms })
    }

    fn endpoints(&self, q: &Quiver) -> Result<(usize, usize)> {
        let first = self
            .terms
            .first()
            .ok_or_else(|| Error::NotAdmissibleRelation("empty relation".into()))?;
        let mut ends = None;
        for t in &self.terms {
            if t.path.len() < 2 {
                return Err(Error::NotAdmissibleRelation(format!(
                    "term {} has length {} < 2",
                    path_string(q, &t.path),
                    t.path.len()
                )));
            }
            if let Some(&a) = t.path.iter().find(|&&a| a >= q.arrows.len()) {
                return Err(Error::InvalidQuiver(format!(
                    "arrow index {a} out of range"
                )));
            }
            for w in t.path.windows(2) {
                if q.arrows[w[0]].tgt != q.arrows[w[1]].src {
                    return Err(Error::InvalidQuiver(format!(
                        "{} is not a path",
                        path_string(q, &t.path)
                    )));
                }
            }
            let e = (
                q.arrows[t.path[0]].src,
                q.arrows[*t.path.last().unwrap()].tgt,
            );
            match ends {
                None => ends = Some(e),
                Some(x) if x != e => {
                    return Err(Error::RelationNotParallel(format!(
                        "{} and {}",
                        path_string(q, &first.path),
                        path_string(q, &t.path)
                    )))
                }
                _ => {}
            }
        }
        Ok(ends.unwrap())
    }
}

pub fn path_string(q: &Quiver, path: &[usize]) -> String {
    path.iter()
        .map(|&a| q.arrows.get(a).map_or("?", |x| x.label.as_str()))
        .join("·")
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BasisElement {
    pub src: usize,
    pub tgt: usize,
    /// Generator indices in traversal order; empty for the idempotent at `src`.
    pub word: Vec<usize>,
}

/// Where an arrow of a tensor algebra comes from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ArrowOrigin {
    Base(usize),
    Loop { vertex: usize, generator: usize },
}

/// Records that an algebra was built as `R ⊗ kQ`.
#[derive(Clone, Debug)]
pub struct TensorProvenance {
    pub base: Arc<Algebra>,
    pub local: Arc<Algebra>,
    pub arrow_origin: Vec<ArrowOrigin>,
}

/// A finite-dimensional basic algebra with a word basis.
#[derive(Clone)]
pub struct Algebra {
    uid: u64,
    quiver: Quiver,
    relations: Vec<Relation>,
    bound: usize,
    basis: Vec<BasisElement>,
    table: Vec<Vec<Vec<(usize, Scalar)>>>,
    blocks: Vec<Vec<usize>>,
    idempotents: Vec<usize>,
    provenance: Option<TensorProvenance>,
}

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Algebra(#{}, {} vertices, dim {})",
            self.uid,
            self.n_vertices(),
            self.dim()
        )
    }
}

impl PartialEq for Algebra {
    fn eq(&self, other: &Self) -> bool {
        self.uid == other.uid
    }
}

impl Algebra {
    fn assemble(
        quiver: Quiver,
        relations: Vec<Relation>,
        bound: usize,
        basis: Vec<BasisElement>,
        table: Vec<Vec<Vec<(usize, Scalar)>>>,
        provenance: Option<TensorProvenance>,
    ) -> Self {
        let n = quiver.n_vertices();
        let mut blocks = vec![Vec::new(); n * n];
        let mut idempotents = vec![usize::MAX; n];
        for (i, b) in basis.iter().enumerate() {
            blocks[b.src * n + b.tgt].push(i);
            if b.word.is_empty() {
                idempotents[b.src] = i;
            }
        }
        Algebra {
            uid: NEXT_UID.fetch_add(1, Ordering::Relaxed),
            quiver,
            relations,
            bound,
            basis,
            table,
            blocks,
            idempotents,
            provenance,
        }
    }

    pub fn uid(&self) -> u64 {
        self.uid
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn n_vertices(&self) -> usize {
        self.quiver.n_vertices()
    }

    pub fn n_arrows(&self) -> usize {
        self.quiver.arrows.len()
    }

    pub fn arrow(&self, a: usize) -> &Arrow {
        &self.quiver.arrows[a]
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    pub fn basis_element(&self, b: usize) -> &BasisElement {
        &self.basis[b]
    }

    /// Basis indices of the block of elements from vertex `src` to vertex `tgt`.
    pub fn block(&self, src: usize, tgt: usize) -> &[usize] {
        &self.blocks[src * self.n_vertices() + tgt]
    }

    pub fn idempotent(&self, v: usize) -> usize {
        self.idempotents[v]
    }

    pub fn provenance(&self) -> Option<&TensorProvenance> {
        self.provenance.as_ref()
    }

    /// Sparse product of two basis elements, `b` after `c`.
    pub fn mul_basis(&self, b: usize, c: usize) -> &[(usize, Scalar)] {
        &self.table[b][c]
    }

    /// Product of two elements given in basis coordinates, `x` after `y`.
    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.dim()];
        for (b, xb) in x.iter().enumerate() {
            if xb.is_zero() {
                continue;
            }
            for (c, yc) in y.iter().enumerate() {
                if yc.is_zero() {
                    continue;
                }
                let f = xb * yc;
                for (d, s) in &self.table[b][c] {
                    out[*d] += &(&f * s);
                }
            }
        }
        out
    }

    pub fn unit_vector(&self, b: usize) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); self.dim()];
        v[b] = Scalar::one();
        v
    }

    /// Human-readable name of a basis element.
    pub fn basis_name(&self, b: usize) -> String {
        let e = &self.basis[b];
        if e.word.is_empty() {
            format!("e{}", self.quiver.vertices[e.src])
        } else {
            path_string(&self.quiver, &e.word)
        }
    }

    /// True when the algebra is the full path algebra of an acyclic quiver.
    pub fn is_path_algebra(&self) -> bool {
        if !self.quiver.is_acyclic() || self.provenance.is_some() {
            return false;
        }
        // count paths ending at each vertex, in topological order
        let n = self.n_vertices();
        let mut ending = vec![1usize; n];
        let mut changed = true;
        while changed {
            changed = false;
            for v in 0..n {
                let c = 1 + self
                    .quiver
                    .arrows
                    .iter()
                    .filter(|a| a.tgt == v)
                    .map(|a| ending[a.src])
                    .sum::<usize>();
                if c != ending[v] {
                    ending[v] = c;
                    changed = true;
                }
            }
        }
        ending.iter().sum::<usize>() == self.dim()
    }

    pub fn is_local(&self) -> bool {
        self.n_vertices() == 1
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.dim()).all(|b| (0..self.dim()).all(|c| self.table[b][c] == self.table[c][b]))
    }

    /// Basis indices spanning the radical (all non-idempotent basis elements).
    pub fn radical_indices(&self) -> Vec<usize> {
        (0..self.dim())
            .filter(|&b| !self.basis[b].word.is_empty())
            .collect()
    }

    /// Multiplication matrix of left multiplication by `x` in the regular representation.
    pub fn left_mult_matrix(&self, x: &[Scalar]) -> Mat {
        let d = self.dim();
        let mut m = Mat::zeros(d, d);
        for c in 0..d {
            let col = self.mul(x, &self.unit_vector(c));
            for (r, v) in col.into_iter().enumerate() {
                if !v.is_zero() {
                    m.set(r, c, v);
                }
            }
        }
        m
    }

    /// Checks associativity and the unit on every compatible basis triple.
    pub fn check_structure(&self) -> Result<()> {
        check_table(
            self.n_vertices(),
            &self.blocks_of(),
            &self.idempotents,
            &self.table,
        )
    }

    fn blocks_of(&self) -> Vec<(usize, usize)> {
        self.basis.iter().map(|b| (b.src, b.tgt)).collect()
    }

    /// Structure constants as dense vectors, indexed `[b][c]`.
    pub fn dense_table(&self) -> Vec<Vec<Vec<Scalar>>> {
        self.table
            .iter()
            .map(|row| {
                row.iter()
                    .map(|sp| {
                        let mut v = vec![Scalar::zero(); self.dim()];
                        for (d, s) in sp {
                            v[*d] = s.clone();
                        }
                        v
                    })
                    .collect()
            })
            .collect()
    }

    /// Image under the quotient map `R ⊗ kQ → kQ` that kills every loop.
    pub fn quotient_to_base(&self, x: &[Scalar]) -> Result<Vec<Scalar>> {
        let prov = self
            .provenance
            .as_ref()
            .ok_or_else(|| Error::Provenance("not a tensor algebra".into()))?;
        let base = &prov.base;
        let mut out = vec![Scalar::zero(); base.dim()];
        for (b, xb) in x.iter().enumerate() {
            if xb.is_zero() {
                continue;
            }
            if let Some(c) = self.base_word_index(b) {
                out[c] += xb;
            }
        }
        Ok(out)
    }

    /// The base basis element with the same word, if `b` contains no loop letter.
    pub fn base_word_index(&self, b: usize) -> Option<usize> {
        let prov = self.provenance.as_ref()?;
        let e = &self.basis[b];
        let mut word = Vec::with_capacity(e.word.len());
        for &a in &e.word {
            match prov.arrow_origin[a] {
                ArrowOrigin::Base(i) => word.push(i),
                ArrowOrigin::Loop { .. } => return None,
            }
        }
        let base = &prov.base;
        base.block(e.src, e.tgt)
            .iter()
            .copied()
            .find(|&c| base.basis[c].word == word)
    }

    /// Embedding `kQ → R ⊗ kQ` on basis elements.
    pub fn embed_from_base(&self, c: usize) -> Result<usize> {
        let prov = self
            .provenance
            .as_ref()
            .ok_or_else(|| Error::Provenance("not a tensor algebra".into()))?;
        let e = &prov.base.basis[c];
        let word: Vec<usize> = e
            .word
            .iter()
            .map(|&i| {
                prov.arrow_origin
                    .iter()
                    .position(|o| *o == ArrowOrigin::Base(i))
                    .unwrap()
            })
            .collect();
        self.block(e.src, e.tgt)
            .iter()
            .copied()
            .find(|&b| self.basis[b].word == word)
            .ok_or_else(|| Error::Provenance("base path is not a basis element".into()))
    }

    /// Loop arrow at `vertex` for the generator `generator` of the local algebra.
    pub fn loop_arrow(&self, vertex: usize, generator: usize) -> Option<usize> {
        let prov = self.provenance.as_ref()?;
        prov.arrow_origin
            .iter()
            .position(|o| *o == ArrowOrigin::Loop { vertex, generator })
    }

    pub fn to_spec(&self) -> AlgebraSpec {
        AlgebraSpec {
            vertices: self.quiver.vertices.clone(),
            arrows: self
                .quiver
                .arrows
                .iter()
                .map(|a| ArrowSpec {
                    label: a.label.clone(),
                    src: self.quiver.vertices[a.src].clone(),
                    tgt: self.quiver.vertices[a.tgt].clone(),
                })
                .collect(),
            relations: self
                .relations
                .iter()
                .map(|r| {
                    r.terms
                        .iter()
                        .map(|t| TermSpec {
                            coeff: t.coeff.clone(),
                            path: t
                                .path
                                .iter()
                                .map(|&a| self.quiver.arrows[a].label.clone())
                                .collect(),
                        })
                        .collect()
                })
                .collect(),
            nilpotency_bound: self.bound,
        }
    }
}

fn check_table(
    n: usize,
    blocks: &[(usize, usize)],
    idempotents: &[usize],
    table: &[Vec<Vec<(usize, Scalar)>>],
) -> Result<()> {
    let dim = blocks.len();
    let dense = |sp: &[(usize, Scalar)]| {
        let mut v = vec![Scalar::zero(); dim];
        for (d, s) in sp {
            v[*d] += s;
        }
        v
    };
    for (v, &e) in idempotents.iter().enumerate() {
        if e >= dim || blocks[e] != (v, v) {
            return Err(Error::UnitMismatch(format!("no idempotent at vertex {v}")));
        }
    }
    let _ = n;
    for x in 0..dim {
        let (s, t) = blocks[x];
        let unit = |v: Vec<Scalar>| v == dense(&[(x, Scalar::one())]);
        if !unit(dense(&table[idempotents[t]][x])) || !unit(dense(&table[x][idempotents[s]])) {
            return Err(Error::UnitMismatch(format!(
                "idempotents do not act as identity on element {x}"
            )));
        }
        for (v, &e) in idempotents.iter().enumerate() {
            if v != t && !table[e][x].is_empty() && dense(&table[e][x]).iter().any(|c| !c.is_zero())
            {
                return Err(Error::UnitMismatch(format!(
                    "e{v} does not annihilate element {x} on the left"
                )));
            }
            if v != s && !table[x][e].is_empty() && dense(&table[x][e]).iter().any(|c| !c.is_zero())
            {
                return Err(Error::UnitMismatch(format!(
                    "e{v} does not annihilate element {x} on the right"
                )));
            }
        }
    }
    let mul = |x: &[Scalar], y: &[Scalar]| {
        let mut out = vec![Scalar::zero(); dim];
        for (b, xb) in x.iter().enumerate() {
            if xb.is_zero() {
                continue;
            }
            for (c, yc) in y.iter().enumerate() {
                if yc.is_zero() {
                    continue;
                }
                for (d, s) in &table[b][c] {
                    out[*d] += &(&(xb * yc) * s);
                }
            }
        }
        out
    };
    for a in 0..dim {
        for b in 0..dim {
            if blocks[b].1 != blocks[a].0 {
                continue;
            }
            let ab = dense(&table[a][b]);
            for c in 0..dim {
                if blocks[c].1 != blocks[b].0 {
                    continue;
                }
                let left = mul(&ab, &dense(&[(c, Scalar::one())]));
                let right = mul(&dense(&[(a, Scalar::one())]), &dense(&table[b][c]));
                if left != right {
                    return Err(Error::NotAssociative(format!(
                        "basis triple ({a}, {b}, {c})"
                    )));
                }
            }
        }
    }
    Ok(())
}

/// Sparse vector keyed by path index, used during ideal closure.
type SparseVec = BTreeMap<usize, Scalar>;

struct PathIndex {
    paths: Vec<(usize, usize, Vec<usize>)>,
    index: HashMap<Vec<usize>, usize>,
    trivial: Vec<usize>,
}

impl PathIndex {
    fn enumerate(q: &Quiver, max_len: usize) -> Self {
        let mut paths = Vec::new();
        let mut index = HashMap::new();
        let mut trivial = Vec::new();
        for v in 0..q.n_vertices() {
            trivial.push(paths.len());
            paths.push((v, v, Vec::new()));
        }
        let mut frontier: Vec<(usize, usize, Vec<usize>)> =
            (0..q.n_vertices()).map(|v| (v, v, Vec::new())).collect();
        for _ in 0..max_len {
            let mut next = Vec::new();
            for (s, t, w) in &frontier {
                for (ai, a) in q.arrows.iter().enumerate() {
                    if a.src == *t {
                        let mut w2 = w.clone();
                        w2.push(ai);
                        next.push((*s, a.tgt, w2));
                    }
                }
            }
            next.sort_by(|x, y| x.2.cmp(&y.2));
            for p in &next {
                index.insert(p.2.clone(), paths.len());
                paths.push(p.clone());
            }
            frontier = next;
        }
        PathIndex {
            paths,
            index,
            trivial,
        }
    }

    fn id(&self, q: &Quiver, word: &[usize]) -> usize {
        if word.is_empty() {
            unreachable!("trivial paths are addressed by vertex")
        }
        let _ = q;
        self.index[word]
    }
}

struct SparseEchelon {
    rows: HashMap<usize, SparseVec>,
}

impl SparseEchelon {
    fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut v = v.clone();
        let mut done = SparseVec::new();
        while let Some((&k, _)) = v.iter().next_back() {
            let c = v.remove(&k).unwrap();
            if c.is_zero() {
                continue;
            }
            match self.rows.get(&k) {
                Some(row) => {
                    for (j, x) in row.iter() {
                        if *j == k {
                            continue;
                        }
                        let e = v.entry(*j).or_insert_with(Scalar::zero);
                        *e -= &(&c * x);
                        if e.is_zero() {
                            v.remove(j);
                        }
                    }
                }
                None => {
                    done.insert(k, c);
                }
            }
        }
        done
    }

    fn insert(&mut self, v: &SparseVec) {
        let r = self.reduce(v);
        if let Some((&k, lead)) = r.iter().next_back() {
            let inv = lead.recip();
            let row: SparseVec = r.iter().map(|(j, x)| (*j, x * &inv)).collect();
            self.rows.insert(k, row);
        }
    }
}

/// Builds `kQ / I` where `I` is generated by the relations, certifying `J^m ⊆ I`.
pub fn build_algebra(quiver: Quiver, relations: Vec<Relation>, m: usize) -> Result<Algebra> {
    build_with_provenance(quiver, relations, m, None)
}

fn build_with_provenance(
    quiver: Quiver,
    relations: Vec<Relation>,
    m: usize,
    provenance: Option<TensorProvenance>,
) -> Result<Algebra> {
    quiver.validate()?;
    if m < 2 {
        return Err(Error::NotAdmissibleRelation(format!(
            "nilpotency bound {m} < 2"
        )));
    }
    let ends = relations
        .iter()
        .map(|r| r.endpoints(&quiver))
        .collect::<Result<Vec<_>>>()?;
    let pi = PathIndex::enumerate(&quiver, m);
    let path_id = |w: &[usize], s: usize| {
        if w.is_empty() {
            pi.trivial[s]
        } else {
            pi.id(&quiver, w)
        }
    };

    let mut ech = SparseEchelon {
        rows: HashMap::new(),
    };
    for (rel, &(s, t)) in relations.iter().zip(&ends) {
        let minlen = rel.terms.iter().map(|t| t.path.len()).min().unwrap();
        let before: Vec<&Vec<usize>> = pi
            .paths
            .iter()
            .filter(|p| p.1 == s && p.2.len() + minlen <= m)
            .map(|p| &p.2)
            .collect();
        let after: Vec<&Vec<usize>> = pi
            .paths
            .iter()
            .filter(|p| p.0 == t && p.2.len() + minlen <= m)
            .map(|p| &p.2)
            .collect();
        for p in &before {
            for q in &after {
                if p.len() + q.len() + minlen > m {
                    continue;
                }
                let mut v = SparseVec::new();
                for term in &rel.terms {
                    if p.len() + q.len() + term.path.len() > m {
                        continue;
                    }
                    let w: Vec<usize> = p
                        .iter()
                        .chain(&term.path)
                        .chain(q.iter())
                        .copied()
                        .collect();
                    let e = v.entry(path_id(&w, s)).or_insert_with(Scalar::zero);
                    *e += &term.coeff;
                }
                v.retain(|_, c| !c.is_zero());
                if !v.is_empty() {
                    ech.insert(&v);
                }
            }
        }
    }

    for (id, p) in pi.paths.iter().enumerate() {
        if p.2.len() == m {
            let r = ech.reduce(&SparseVec::from([(id, Scalar::one())]));
            if !r.is_empty() {
                return Err(Error::NotAdmissibleAtBound {
                    bound: m,
                    path: path_string(&quiver, &p.2),
                });
            }
        }
    }

    let mut basis_ids: Vec<usize> = (0..pi.paths.len())
        .filter(|id| pi.paths[*id].2.len() < m && !ech.rows.contains_key(id))
        .collect();
    basis_ids.sort_by(|&a, &b| {
        let (pa, pb) = (&pi.paths[a], &pi.paths[b]);
        (pa.2.len(), &pa.2, pa.0).cmp(&(pb.2.len(), &pb.2, pb.0))
    });
    let pos: HashMap<usize, usize> = basis_ids
        .iter()
        .enumerate()
        .map(|(i, &id)| (id, i))
        .collect();
    let basis: Vec<BasisElement> = basis_ids
        .iter()
        .map(|&id| {
            let (s, t, w) = &pi.paths[id];
            BasisElement {
                src: *s,
                tgt: *t,
                word: w.clone(),
            }
        })
        .collect();

    let dim = basis.len();
    let mut table = vec![vec![Vec::new(); dim]; dim];
    for (bi, b) in basis.iter().enumerate() {
        for (ci, c) in basis.iter().enumerate() {
            if c.tgt != b.src {
                continue;
            }
            let len = b.word.len() + c.word.len();
            if len >= m {
                continue;
            }
            let w: Vec<usize> = c.word.iter().chain(&b.word).copied().collect();
            let r = ech.reduce(&SparseVec::from([(path_id(&w, c.src), Scalar::one())]));
            table[bi][ci] = r.into_iter().map(|(k, x)| (pos[&k], x)).collect();
        }
    }
    Ok(Algebra::assemble(
        quiver, relations, m, basis, table, provenance,
    ))
}

/// Path algebra of an acyclic quiver.
pub fn path_algebra(q: Quiver) -> Result<Algebra> {
    let m = q.longest_path().ok_or(Error::OrientedCycle)? + 1;
    build_algebra(q, Vec::new(), m.max(2))
}

/// `R ⊗ kQ` for a one-vertex local algebra `R` and an acyclic quiver `Q`.
pub fn tensor_construction(r: &Arc<Algebra>, q: &Quiver) -> Result<Algebra> {
    if r.n_vertices() != 1 {
        return Err(Error::InvalidQuiver(
            "local algebra must have exactly one vertex".into(),
        ));
    }
    let longest = q.longest_path().ok_or(Error::OrientedCycle)?;
    let base = Arc::new(path_algebra(q.clone())?);
    let m = r.bound() + longest;
    let rq = r.quiver();
    let mut arrows = q.arrows.clone();
    let mut origin: Vec<ArrowOrigin> = (0..q.arrows.len()).map(ArrowOrigin::Base).collect();
    for v in 0..q.n_vertices() {
        for (g, a) in rq.arrows.iter().enumerate() {
            arrows.push(Arrow {
                label: format!("{}_{}", a.label, q.vertices[v]),
                src: v,
                tgt: v,
            });
            origin.push(ArrowOrigin::Loop {
                vertex: v,
                generator: g,
            });
        }
    }
    let loop_at = |v: usize, g: usize| {
        origin
            .iter()
            .position(|o| {
                *o == ArrowOrigin::Loop {
                    vertex: v,
                    generator: g,
                }
            })
            .unwrap()
    };
    let qq = Quiver::new(q.vertices.clone(), arrows)?;
    let mut relations = Vec::new();
    for v in 0..q.n_vertices() {
        for rel in r.relations() {
            relations.push(Relation::new(
                rel.terms
                    .iter()
                    .map(|t| Term {
                        coeff: t.coeff.clone(),
                        path: t.path.iter().map(|&g| loop_at(v, g)).collect(),
                    })
                    .collect(),
            ));
        }
    }
    for (ai, a) in q.arrows.iter().enumerate() {
        for g in 0..rq.arrows.len() {
            relations.push(Relation::new(vec![
                Term {
                    coeff: Scalar::one(),
                    path: vec![loop_at(a.src, g), ai],
                },
                Term {
                    coeff: -Scalar::one(),
                    path: vec![ai, loop_at(a.tgt, g)],
                },
            ]));
        }
    }
    let prov = TensorProvenance {
        base,
        local: r.clone(),
        arrow_origin: origin,
    };
    build_with_provenance(qq, relations, m.max(2), Some(prov))
}

/// Opposite algebra: arrows reversed, words reversed, table transposed.
pub fn opposite(a: &Algebra) -> Algebra {
    let quiver = a.quiver.opposite();
    let basis: Vec<BasisElement> = a
        .basis
        .iter()
        .map(|b| BasisElement {
            src: b.tgt,
            tgt: b.src,
            word: b.word.iter().rev().copied().collect(),
        })
        .collect();
    let dim = a.dim();
    let table: Vec<Vec<Vec<(usize, Scalar)>>> = (0..dim)
        .map(|b| (0..dim).map(|c| a.table[c][b].clone()).collect())
        .collect();
    let relations = a
        .relations
        .iter()
        .map(|r| {
            Relation::new(
                r.terms
                    .iter()
                    .map(|t| Term {
                        coeff: t.coeff.clone(),
                        path: t.path.iter().rev().copied().collect(),
                    })
                    .collect(),
            )
        })
        .collect();
    let provenance = a.provenance.as_ref().map(|p| TensorProvenance {
        base: Arc::new(opposite(&p.base)),
        local: Arc::new(opposite(&p.local)),
        arrow_origin: p.arrow_origin.clone(),
    });
    Algebra::assemble(quiver, relations, a.bound, basis, table, provenance)
}

static OPPOSITES: Mutex<Option<HashMap<u64, Arc<Algebra>>>> = Mutex::new(None);

/// Shared opposite algebra; `opposite_arc(&opposite_arc(a))` returns `a` itself.
pub fn opposite_arc(a: &Arc<Algebra>) -> Arc<Algebra> {
    let mut guard = OPPOSITES.lock().expect("opposite cache poisoned");
    let cache = guard.get_or_insert_with(HashMap::new);
    if let Some(op) = cache.get(&a.uid()) {
        return op.clone();
    }
    let op = Arc::new(opposite(a));
    cache.insert(a.uid(), op.clone());
    cache.insert(op.uid(), a.clone());
    op
}

/// An algebra given by structure constants on a basis adapted to a complete set of
/// primitive orthogonal idempotents.
#[derive(Clone, Debug)]
pub struct StructureConstants {
    pub vertex_labels: Vec<String>,
    /// `(src, tgt)` block of each basis element.
    pub blocks: Vec<(usize, usize)>,
    /// Basis index of the idempotent at each vertex.
    pub idempotents: Vec<usize>,
    /// `table[b][c]` is the product `b · c` as a dense coordinate vector.
    pub table: Vec<Vec<Vec<Scalar>>>,
}

/// The result of normalizing an abstract algebra to a word basis.
#[derive(Clone, Debug)]
pub struct Normalized {
    pub algebra: Algebra,
    /// Each new basis element in old coordinates (rows).
    pub new_to_old: Vec<Vec<Scalar>>,
    /// Change of coordinates from old to new: `new = old_to_new · old`.
    pub old_to_new: Mat,
}

/// Wraps an abstract algebra in the word-basis interface.
///
/// The radical is computed from the trace form of the regular representation;
/// generators are chosen as a complement of `rad²` in `rad` block by block, and
/// the word basis is grown breadth-first from the idempotents.
pub fn algebra_from_structure_constants(sc: &StructureConstants) -> Result<Normalized> {
    let dim = sc.blocks.len();
    let n = sc.vertex_labels.len();
    let sparse: Vec<Vec<Vec<(usize, Scalar)>>> = sc
        .table
        .iter()
        .map(|row| {
            row.iter()
                .map(|v| {
                    v.iter()
                        .enumerate()
                        .filter(|(_, x)| !x.is_zero())
                        .map(|(i, x)| (i, x.clone()))
                        .collect()
                })
                .collect()
        })
        .collect();
    check_table(n, &sc.blocks, &sc.idempotents, &sparse)?;

    let mul = |x: &[Scalar], y: &[Scalar]| -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); dim];
        for (b, xb) in x.iter().enumerate() {
            if xb.is_zero() {
                continue;
            }
            for (c, yc) in y.iter().enumerate() {
                if yc.is_zero() {
                    continue;
                }
                let f = xb * yc;
                for (d, s) in &sparse[b][c] {
                    out[*d] += &(&f * s);
                }
            }
        }
        out
    };
    let unit = |b: usize| {
        let mut v = vec![Scalar::zero(); dim];
        v[b] = Scalar::one();
        v
    };
    // trace of left multiplication by each basis element
    let tr: Vec<Scalar> = (0..dim)
        .map(|d| (0..dim).map(|c| sc.table[d][c][c].clone()).sum())
        .collect();
    let trace_of = |x: &[Scalar]| -> Scalar { x.iter().zip(&tr).map(|(a, b)| a * b).sum() };

    let block_members = |s: usize, t: usize| -> Vec<usize> {
        (0..dim).filter(|&b| sc.blocks[b] == (s, t)).collect()
    };
    let mut rad: HashMap<(usize, usize), Vec<Vec<Scalar>>> = HashMap::new();
    for s in 0..n {
        for t in 0..n {
            let mem = block_members(s, t);
            let dual = block_members(t, s);
            // a ∈ rad iff trace(a · y) = 0 for all y in the opposite block
            let mut m = Mat::zeros(dual.len(), mem.len());
            for (j, &a) in mem.iter().enumerate() {
                for (i, &y) in dual.iter().enumerate() {
                    m.set(i, j, trace_of(&mul(&unit(a), &unit(y))));
                }
            }
            let ker = m.kernel_basis();
            let vecs = ker
                .into_iter()
                .map(|k| {
                    let mut v = vec![Scalar::zero(); dim];
                    for (j, &a) in mem.iter().enumerate() {
                        v[a] = k[j].clone();
                    }
                    v
                })
                .collect();
            rad.insert((s, t), vecs);
        }
    }
    for v in 0..n {
        if rad[&(v, v)].len() + 1 != block_members(v, v).len() {
            return Err(Error::ResidueField(format!(
                "vertex {v}: the corner algebra is not local with residue field Q"
            )));
        }
    }

    // generators: complement of rad² in rad, block by block
    let mut gens: Vec<(usize, usize, Vec<Scalar>)> = Vec::new();
    for s in 0..n {
        for t in 0..n {
            let mut sq = Echelon::new(dim);
            for k in 0..n {
                for u in &rad[&(k, t)] {
                    for w in &rad[&(s, k)] {
                        sq.insert(&mul(u, w));
                    }
                }
            }
            for v in &rad[&(s, t)] {
                if sq.insert(v) {
                    gens.push((s, t, v.clone()));
                }
            }
        }
    }

    // breadth-first word basis
    let mut elems: Vec<(BasisElement, Vec<Scalar>)> = Vec::new();
    let mut spans: HashMap<(usize, usize), Echelon> = HashMap::new();
    for v in 0..n {
        let x = unit(sc.idempotents[v]);
        spans
            .entry((v, v))
            .or_insert_with(|| Echelon::new(dim))
            .insert(&x);
        elems.push((
            BasisElement {
                src: v,
                tgt: v,
                word: Vec::new(),
            },
            x,
        ));
    }
    let mut level: Vec<usize> = (0..n).collect();
    while !level.is_empty() {
        let mut next = Vec::new();
        let mut candidates: Vec<(BasisElement, Vec<Scalar>)> = Vec::new();
        for &wi in &level {
            let (w, x) = elems[wi].clone();
            for (gi, (gs, gt, g)) in gens.iter().enumerate() {
                if *gs != w.tgt {
                    continue;
                }
                let prod = mul(g, &x);
                let mut word = w.word.clone();
                word.push(gi);
                candidates.push((
                    BasisElement {
                        src: w.src,
                        tgt: *gt,
                        word,
                    },
                    prod,
                ));
            }
        }
        candidates.sort_by(|a, b| a.0.word.cmp(&b.0.word).then(a.0.src.cmp(&b.0.src)));
        for (e, x) in candidates {
            let span = spans
                .entry((e.src, e.tgt))
                .or_insert_with(|| Echelon::new(dim));
            if span.insert(&x) {
                next.push(elems.len());
                elems.push((e, x));
            }
        }
        level = next;
    }
    if elems.len() != dim {
        return Err(Error::Verification(format!(
            "generators span a subalgebra of dimension {} inside dimension {dim}",
            elems.len()
        )));
    }
    elems.sort_by(|a, b| {
        (a.0.word.len(), &a.0.word, a.0.src).cmp(&(b.0.word.len(), &b.0.word, b.0.src))
    });
    let new_to_old: Vec<Vec<Scalar>> = elems.iter().map(|e| e.1.clone()).collect();
    let basis: Vec<BasisElement> = elems.into_iter().map(|e| e.0).collect();
    let change = Mat::from_cols(dim, &new_to_old);
    let old_to_new = change
        .inverse()
        .ok_or_else(|| Error::Verification("word basis is singular".into()))?;
    let mut table = vec![vec![Vec::new(); dim]; dim];
    for b in 0..dim {
        for c in 0..dim {
            if basis[c].tgt != basis[b].src {
                continue;
            }
            let p = mul(&new_to_old[b], &new_to_old[c]);
            if p.iter().all(Scalar::is_zero) {
                continue;
            }
            let coords = old_to_new.mul_vec(&p);
            table[b][c] = coords
                .into_iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .collect();
        }
    }
    let arrows: Vec<Arrow> = gens
        .iter()
        .enumerate()
        .map(|(i, (s, t, _))| Arrow {
            label: format!("g{i}"),
            src: *s,
            tgt: *t,
        })
        .collect();
    let bound = basis.iter().map(|b| b.word.len()).max().unwrap_or(0) + 1;
    let quiver = Quiver {
        vertices: sc.vertex_labels.clone(),
        arrows,
    };
    let algebra = Algebra::assemble(quiver, Vec::new(), bound.max(2), basis, table, None);
    Ok(Normalized {
        algebra,
        new_to_old,
        old_to_new,
    })
}

impl Algebra {
    /// Structure constants of this algebra in its own basis.
    pub fn structure_constants(&self) -> StructureConstants {
        StructureConstants {
            vertex_labels: self.quiver.vertices.clone(),
            blocks: self.blocks_of(),
            idempotents: self.idempotents.clone(),
            table: self.dense_table(),
        }
    }
}

/// Dynkin type of a connected component.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum DynkinType {
    A(usize),
    D(usize),
    E(usize),
}

impl DynkinType {
    pub fn positive_roots(self) -> usize {
        match self {
            DynkinType::A(n) => n * (n + 1) / 2,
            DynkinType::D(n) => n * (n - 1),
            DynkinType::E(6) => 36,
            DynkinType::E(7) => 63,
            DynkinType::E(8) => 120,
            DynkinType::E(_) => unreachable!(),
        }
    }
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DynkinType::A(n) => write!(f, "A_{n}"),
            DynkinType::D(n) => write!(f, "D_{n}"),
            DynkinType::E(n) => write!(f, "E_{n}"),
        }
    }
}

/// Classification of each connected component of the underlying graph; `None` marks a
/// component that is not Dynkin.
pub fn is_dynkin(q: &Quiver) -> Vec<Option<DynkinType>> {
    let n = q.n_vertices();
    let mut comp = vec![usize::MAX; n];
    let mut comps = Vec::new();
    for s in 0..n {
        if comp[s] != usize::MAX {
            continue;
        }
        let id = comps.len();
        let mut members = vec![s];
        comp[s] = id;
        let mut i = 0;
        while i < members.len() {
            let v = members[i];
            for a in &q.arrows {
                for (x, y) in [(a.src, a.tgt), (a.tgt, a.src)] {
                    if x == v && comp[y] == usize::MAX {
                        comp[y] = id;
                        members.push(y);
                    }
                }
            }
            i += 1;
        }
        comps.push(members);
    }
    comps
        .iter()
        .map(|members| {
            let edges: Vec<&Arrow> = q
                .arrows
                .iter()
                .filter(|a| comp[a.src] == comp[members[0]])
                .collect();
            if edges.iter().any(|a| a.src == a.tgt) || edges.len() + 1 != members.len() {
                return None;
            }
            let pairs: Vec<(usize, usize)> = edges
                .iter()
                .map(|a| (a.src.min(a.tgt), a.src.max(a.tgt)))
                .collect();
            if !pairs.iter().all_unique() {
                return None;
            }
            let deg = |v: usize| pairs.iter().filter(|(x, y)| *x == v || *y == v).count();
            let k = members.len();
            let branch: Vec<usize> = members.iter().copied().filter(|&v| deg(v) >= 3).collect();
            match branch.as_slice() {
                [] => Some(DynkinType::A(k)),
                [c] if deg(*c) == 3 => {
                    let mut arms: Vec<usize> = pairs
                        .iter()
                        .filter_map(|(x, y)| {
                            if x == c {
                                Some(*y)
                            } else if y == c {
                                Some(*x)
                            } else {
                                None
                            }
                        })
                        .map(|start| {
                            let (mut prev, mut cur, mut len) = (*c, start, 1);
                            loop {
                                let next = pairs.iter().find_map(|(x, y)| {
                                    if *x == cur && *y != prev {
                                        Some(*y)
                                    } else if *y == cur && *x != prev {
                                        Some(*x)
                                    } else {
                                        None
                                    }
                                });
                                match next {
                                    Some(nx) => {
                                        prev = cur;
                                        cur = nx;
                                        len += 1;
                                    }
                                    None => break len,
                                }
                            }
                        })
                        .collect();
                    arms.sort();
                    match arms.as_slice() {
                        [1, 1, _] => Some(DynkinType::D(k)),
                        [1, 2, 2] => Some(DynkinType::E(6)),
                        [1, 2, 3] => Some(DynkinType::E(7)),
                        [1, 2, 4] => Some(DynkinType::E(8)),
                        _ => None,
                    }
                }
                _ => None,
            }
        })
        .collect()
}

/// True if every component of the underlying graph is Dynkin.
pub fn all_dynkin(q: &Quiver) -> bool {
    is_dynkin(q).iter().all(Option::is_some)
}

/// JSON file schema for a bound quiver algebra.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraSpec {
    pub vertices: Vec<String>,
    pub arrows: Vec<ArrowSpec>,
    #[serde(default)]
    pub relations: Vec<Vec<TermSpec>>,
    pub nilpotency_bound: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrowSpec {
    pub label: String,
    pub src: String,
    pub tgt: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermSpec {
    pub coeff: Scalar,
    pub path: Vec<String>,
}

/// JSON file schema for a tensor product `local ⊗ kQ`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TensorSpec {
    pub local: AlgebraSpec,
    pub quiver: QuiverSpec,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuiverSpec {
    pub vertices: Vec<String>,
    pub arrows: Vec<ArrowSpec>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AnySpec {
    Tensor(TensorSpec),
    Plain(AlgebraSpec),
}

impl QuiverSpec {
    pub fn to_quiver(&self) -> Result<Quiver> {
        let triples: Vec<(&str, &str, &str)> = self
            .arrows
            .iter()
            .map(|a| (a.label.as_str(), a.src.as_str(), a.tgt.as_str()))
            .collect();
        let vs: Vec<&str> = self.vertices.iter().map(String::as_str).collect();
        Quiver::from_labels(&vs, &triples)
    }
}

impl AlgebraSpec {
    pub fn quiver(&self) -> Result<Quiver> {
        QuiverSpec {
            vertices: self.vertices.clone(),
            arrows: self.arrows.clone(),
        }
        .to_quiver()
    }

    pub fn build(&self) -> Result<Algebra> {
        let q = self.quiver()?;
        let relations = self
            .relations
            .iter()
            .map(|terms| {
                let terms = terms
                    .iter()
                    .map(|t| {
                        let path = t
                            .path
                            .iter()
                            .map(|l| {
                                q.arrow_index(l)
                                    .ok_or_else(|| Error::Parse(format!("unknown arrow {l:?}")))
                            })
                            .collect::<Result<Vec<_>>>()?;
                        Ok(Term {
                            coeff: t.coeff.clone(),
                            path,
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(Relation::new(terms))
            })
            .collect::<Result<Vec<_>>>()?;
        build_algebra(q, relations, self.nilpotency_bound)
    }
}

impl AnySpec {
    pub fn parse(text: &str) -> Result<Self> {
        if let Ok(t) = serde_json::from_str::<TensorSpec>(text) {
            return Ok(AnySpec::Tensor(t));
        }
        serde_json::from_str::<AlgebraSpec>(text)
            .map(AnySpec::Plain)
            .map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn build(&self) -> Result<Algebra> {
        match self {
            AnySpec::Plain(p) => p.build(),
            AnySpec::Tensor(t) => {
                let r = Arc::new(t.local.build()?);
                if !r.is_local() || !r.is_commutative() {
                    return Err(Error::Parse(
                        "local factor must be a commutative one-vertex algebra".into(),
                    ));
                }
                tensor_construction(&r, &t.quiver.to_quiver()?)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn a2_path_algebra() {
        let a = fixtures::a2();
        assert_eq!(a.dim(), 3);
        assert_eq!(a.block(0, 1).len(), 1);
        a.check_structure().unwrap();
        let names: Vec<String> = (0..3).map(|b| a.basis_name(b)).collect();
        assert_eq!(names, vec!["e1", "e2", "a1"]);
    }

    #[test]
    fn local_algebra_r() {
        let r = fixtures::r_xy();
        assert_eq!(r.dim(), 4);
        assert!(r.is_local() && r.is_commutative());
        let names: Vec<String> = (0..4).map(|b| r.basis_name(b)).collect();
        assert_eq!(names, vec!["e1", "x", "y", "x·y"]);
        r.check_structure().unwrap();
    }

    #[test]
    fn a3_rad_square() {
        let a = fixtures::a3_rad2();
        assert_eq!(a.dim(), 5);
        a.check_structure().unwrap();
    }

    #[test]
    fn tensor_dimensions() {
        let e = fixtures::example7();
        assert_eq!(e.dim(), 12);
        assert_eq!(e.n_arrows(), 5);
        assert_eq!(e.relations().len(), 8);
        e.check_structure().unwrap();
        let d = fixtures::a2_dual_numbers();
        assert_eq!(d.dim(), 6);
        let triv =
            tensor_construction(&Arc::new(fixtures::trivial_local()), &Quiver::linear(3)).unwrap();
        assert_eq!(triv.dim(), 6);
        assert_eq!(triv.n_arrows(), 2);
        let a3r = tensor_construction(&Arc::new(fixtures::r_xy()), &Quiver::linear(3)).unwrap();
        assert_eq!(a3r.dim(), 24);
    }

    #[test]
    fn idempotents_act_as_units() {
        for a in [fixtures::example7(), fixtures::a3_rad2(), fixtures::r_xy()] {
            for (i, b) in a.basis().iter().enumerate() {
                let left = a.mul_basis(a.idempotent(b.tgt), i);
                let right = a.mul_basis(i, a.idempotent(b.src));
                assert_eq!(left, &[(i, Scalar::one())]);
                assert_eq!(right, &[(i, Scalar::one())]);
            }
        }
    }

    #[test]
    fn quotient_map_is_a_homomorphism() {
        let e = fixtures::example7();
        let base = e.provenance().unwrap().base.clone();
        let mut kernel = 0;
        for b in 0..e.dim() {
            let qb = e.quotient_to_base(&e.unit_vector(b)).unwrap();
            if qb.iter().all(Scalar::is_zero) {
                kernel += 1;
                let e_b = e.basis_element(b);
                assert!(e_b.word.iter().any(|&a| matches!(
                    e.provenance().unwrap().arrow_origin[a],
                    ArrowOrigin::Loop { .. }
                )));
            }
            for c in 0..e.dim() {
                let prod = e.mul(&e.unit_vector(b), &e.unit_vector(c));
                let lhs = e.quotient_to_base(&prod).unwrap();
                let rhs = base.mul(&qb, &e.quotient_to_base(&e.unit_vector(c)).unwrap());
                assert_eq!(lhs, rhs);
            }
        }
        assert_eq!(kernel, e.dim() - base.dim());
        for c in 0..base.dim() {
            let b = e.embed_from_base(c).unwrap();
            assert_eq!(e.base_word_index(b), Some(c));
        }
    }

    #[test]
    fn inadmissible_bound_is_reported() {
        let q = Quiver::from_labels(&["1"], &[("x", "1", "1")]).unwrap();
        let rel = Relation::from_labels(&q, &[(1, &["x", "x", "x"])]).unwrap();
        assert!(matches!(
            build_algebra(q.clone(), vec![rel.clone()], 2),
            Err(Error::NotAdmissibleAtBound { .. })
        ));
        assert_eq!(build_algebra(q, vec![rel], 3).unwrap().dim(), 3);
    }

    #[test]
    fn relation_validation() {
        let q = Quiver::linear(3);
        let bad = Relation::from_labels(&q, &[(1, &["a1", "a2"]), (1, &["a1"])]).unwrap();
        assert!(build_algebra(q.clone(), vec![bad], 3).is_err());
        let r = Relation::from_labels(&q, &[(1, &["a1", "a2"])]).unwrap();
        let q2 = Quiver::from_labels(
            &["1", "2", "3"],
            &[("a1", "1", "2"), ("a2", "1", "3"), ("b", "2", "3")],
        )
        .unwrap();
        let notpar = Relation::from_labels(&q2, &[(1, &["a1", "b"]), (1, &["a1", "b"])]).unwrap();
        assert!(build_algebra(q2, vec![notpar], 3).is_ok());
        assert!(build_algebra(q, vec![r], 2).is_ok());
        let q3 = Quiver::from_labels(
            &["1", "2", "3", "4"],
            &[
                ("a", "1", "2"),
                ("b", "2", "3"),
                ("c", "1", "4"),
                ("d", "4", "3"),
            ],
        )
        .unwrap();
        let commut = Relation::from_labels(&q3, &[(1, &["a", "b"]), (-1, &["c", "d"])]).unwrap();
        assert_eq!(
            build_algebra(q3.clone(), vec![commut], 3).unwrap().dim(),
            4 + 4 + 1
        );
        let mixed = Relation::from_labels(&q3, &[(1, &["a", "b"]), (1, &["c"])]);
        assert!(mixed.is_ok());
        let oriented =
            Quiver::from_labels(&["1", "2"], &[("a", "1", "2"), ("b", "2", "1")]).unwrap();
        assert!(matches!(path_algebra(oriented), Err(Error::OrientedCycle)));
    }

    #[test]
    fn parallel_check_rejects() {
        let q = Quiver::from_labels(
            &["1", "2", "3"],
            &[
                ("a", "1", "2"),
                ("b", "2", "3"),
                ("c", "1", "2"),
                ("d", "2", "2"),
            ],
        )
        .unwrap();
        let r = Relation::from_labels(&q, &[(1, &["a", "b"]), (1, &["c", "d"])]).unwrap();
        assert!(matches!(
            build_algebra(q, vec![r], 4),
            Err(Error::RelationNotParallel(_))
        ));
    }

    #[test]
    fn dynkin_classification() {
        assert_eq!(is_dynkin(&Quiver::linear(2)), vec![Some(DynkinType::A(2))]);
        let kron = Quiver::from_labels(&["1", "2"], &[("a", "1", "2"), ("b", "1", "2")]).unwrap();
        assert_eq!(is_dynkin(&kron), vec![None]);
        let star = Quiver::from_labels(
            &["c", "1", "2", "3"],
            &[("a", "1", "c"), ("b", "2", "c"), ("d", "c", "3")],
        )
        .unwrap();
        assert_eq!(is_dynkin(&star), vec![Some(DynkinType::D(4))]);
        let e6 = Quiver::from_labels(
            &["1", "2", "3", "4", "5", "6"],
            &[
                ("a", "1", "2"),
                ("b", "2", "3"),
                ("c", "3", "4"),
                ("d", "4", "5"),
                ("e", "3", "6"),
            ],
        )
        .unwrap();
        assert_eq!(is_dynkin(&e6), vec![Some(DynkinType::E(6))]);
        let two = Quiver::from_labels(&["1", "2", "3"], &[("a", "1", "2")]).unwrap();
        assert_eq!(
            is_dynkin(&two),
            vec![Some(DynkinType::A(2)), Some(DynkinType::A(1))]
        );
        let d5 = Quiver::from_labels(
            &["1", "2", "3", "4", "5"],
            &[
                ("a", "1", "2"),
                ("b", "2", "3"),
                ("c", "3", "4"),
                ("d", "3", "5"),
            ],
        )
        .unwrap();
        assert_eq!(is_dynkin(&d5), vec![Some(DynkinType::D(5))]);
        assert_eq!(DynkinType::A(3).positive_roots(), 6);
    }

    #[test]
    fn opposite_algebras() {
        let a = fixtures::a2();
        let op = opposite(&a);
        assert_eq!(op.arrow(0).src, 1);
        assert_eq!(op.arrow(0).tgt, 0);
        op.check_structure().unwrap();
        let back = opposite(&op);
        assert_eq!(back.basis(), a.basis());
        assert_eq!(back.dense_table(), a.dense_table());
        let r = fixtures::r_xy();
        assert_eq!(opposite(&r).dense_table(), r.dense_table());
        let e = fixtures::example7();
        opposite(&e).check_structure().unwrap();
    }

    #[test]
    fn structure_constant_wrapping() {
        let one = StructureConstants {
            vertex_labels: vec!["v".into()],
            blocks: vec![(0, 0)],
            idempotents: vec![0],
            table: vec![vec![vec![Scalar::one()]]],
        };
        let n = algebra_from_structure_constants(&one).unwrap();
        assert_eq!(n.algebra.dim(), 1);
        assert!(n.algebra.radical_indices().is_empty());
        // dual numbers with a non-standard basis {1, 1 + 2x}
        let (o, z) = (Scalar::one(), Scalar::zero());
        let two = Scalar::from(2);
        let w = |a: &Scalar, b: &Scalar| vec![a.clone(), b.clone()];
        // u = 1 + 2x: u·u = 1 + 4x = -1 + 2u
        let dual = StructureConstants {
            vertex_labels: vec!["v".into()],
            blocks: vec![(0, 0), (0, 0)],
            idempotents: vec![0],
            table: vec![
                vec![w(&o, &z), w(&z, &o)],
                vec![w(&z, &o), w(&-o.clone(), &two)],
            ],
        };
        let n = algebra_from_structure_constants(&dual).unwrap();
        assert_eq!(n.algebra.radical_indices().len(), 1);
        assert_eq!(n.algebra.n_arrows(), 1);
        n.algebra.check_structure().unwrap();
        // the radical generator squares to zero
        let g = n.algebra.radical_indices()[0];
        assert!(n.algebra.mul_basis(g, g).is_empty());
    }

    #[test]
    fn structure_constant_errors() {
        let o = Scalar::one();
        let z = Scalar::zero();
        let bad_unit = StructureConstants {
            vertex_labels: vec!["v".into()],
            blocks: vec![(0, 0)],
            idempotents: vec![0],
            table: vec![vec![vec![Scalar::from(2)]]],
        };
        assert!(matches!(
            algebra_from_structure_constants(&bad_unit),
            Err(Error::UnitMismatch(_))
        ));
        // x·x = y, x·y = 0, y·x = y: not associative since (x·x)·x = y·x = y but x·(x·x) = 0
        let v = |a: i64, b: i64, c: i64| vec![Scalar::from(a), Scalar::from(b), Scalar::from(c)];
        let nonassoc = StructureConstants {
            vertex_labels: vec!["v".into()],
            blocks: vec![(0, 0); 3],
            idempotents: vec![0],
            table: vec![
                vec![v(1, 0, 0), v(0, 1, 0), v(0, 0, 1)],
                vec![v(0, 1, 0), v(0, 0, 1), v(0, 0, 0)],
                vec![v(0, 0, 1), v(0, 0, 1), v(0, 0, 0)],
            ],
        };
        let _ = (o, z);
        assert!(matches!(
            algebra_from_structure_constants(&nonassoc),
            Err(Error::NotAssociative(_))
        ));
    }

    #[test]
    fn renormalizing_a_bound_quiver_algebra_preserves_dimensions() {
        let e = fixtures::example7();
        let n = algebra_from_structure_constants(&e.structure_constants()).unwrap();
        assert_eq!(n.algebra.dim(), 12);
        assert_eq!(n.algebra.n_arrows(), 5);
        n.algebra.check_structure().unwrap();
    }

    #[test]
    fn spec_round_trip() {
        let e = fixtures::a3_rad2();
        let spec = e.to_spec();
        let text = serde_json::to_string(&spec).unwrap();
        let back = AnySpec::parse(&text).unwrap().build().unwrap();
        assert_eq!(back.dense_table(), e.dense_table());
        let unknown = text.replacen("\"vertices\"", "\"bogus\":1,\"vertices\"", 1);
        assert!(AnySpec::parse(&unknown).is_err());
    }
}
