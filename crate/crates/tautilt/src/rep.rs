//! Modules as quiver representations: Hom spaces, isomorphism tests,
//! Krull–Schmidt decomposition, induction and restriction.

use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{Algebra, ArrowOrigin};
use crate::error::{Error, Result};
use crate::exactlin::{
    char_poly, kernel_basis, kernel_with_free, rational_roots, rref, Echelon, Mat, Scalar,
};

static DEFAULT_SEED: AtomicU64 = AtomicU64::new(0x7a75_7469_6c74);

/// Seed used by randomized searches that are not given one explicitly.
pub fn default_seed() -> u64 {
    DEFAULT_SEED.load(Ordering::Relaxed)
}

pub fn set_default_seed(seed: u64) {
    DEFAULT_SEED.store(seed, Ordering::Relaxed);
}

/// A finite-dimensional left module, given by a vector space at each vertex
/// and a matrix for each generator.
#[derive(Clone)]
pub struct Representation {
    alg: Arc<Algebra>,
    dims: Vec<usize>,
    maps: Vec<Mat>,
}

impl fmt::Debug for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Rep{:?}", self.dims)
    }
}

/// A module homomorphism; `maps[v]` is `dim N_v × dim M_v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepMorphism {
    pub maps: Vec<Mat>,
}

impl Representation {
    pub fn new(alg: &Arc<Algebra>, dims: Vec<usize>, maps: Vec<Mat>) -> Result<Self> {
        let m = Self::new_unchecked(alg, dims, maps)?;
        m.check_relations()?;
        Ok(m)
    }

    /// Builds a representation checking only shapes.
    pub fn new_unchecked(alg: &Arc<Algebra>, dims: Vec<usize>, maps: Vec<Mat>) -> Result<Self> {
        if dims.len() != alg.n_vertices() || maps.len() != alg.n_arrows() {
            return Err(Error::Shape(format!(
                "{} dims and {} maps for {} vertices and {} arrows",
                dims.len(),
                maps.len(),
                alg.n_vertices(),
                alg.n_arrows()
            )));
        }
        for (a, m) in maps.iter().enumerate() {
            let ar = alg.arrow(a);
            if m.shape() != (dims[ar.tgt], dims[ar.src]) {
                return Err(Error::Shape(format!(
                    "map of arrow {} has shape {:?}",
                    ar.label,
                    m.shape()
                )));
            }
        }
        Ok(Representation {
            alg: alg.clone(),
            dims,
            maps,
        })
    }

    pub fn zero(alg: &Arc<Algebra>) -> Self {
        let dims = vec![0; alg.n_vertices()];
        let maps = (0..alg.n_arrows()).map(|_| Mat::zeros(0, 0)).collect();
        Representation {
            alg: alg.clone(),
            dims,
            maps,
        }
    }

    pub fn simple(alg: &Arc<Algebra>, i: usize) -> Self {
        let mut dims = vec![0; alg.n_vertices()];
        dims[i] = 1;
        let maps = (0..alg.n_arrows())
            .map(|a| Mat::zeros(dims[alg.arrow(a).tgt], dims[alg.arrow(a).src]))
            .collect();
        Representation {
            alg: alg.clone(),
            dims,
            maps,
        }
    }

    /// The indecomposable projective `A e_i`; at vertex `j` its basis is the block from `i` to `j`.
    pub fn projective(alg: &Arc<Algebra>, i: usize) -> Self {
        let n = alg.n_vertices();
        let dims: Vec<usize> = (0..n).map(|j| alg.block(i, j).len()).collect();
        let maps = (0..alg.n_arrows())
            .map(|a| {
                let ar = alg.arrow(a);
                let g = generator_element(alg, a);
                let (src_b, tgt_b) = (alg.block(i, ar.src), alg.block(i, ar.tgt));
                let mut m = Mat::zeros(tgt_b.len(), src_b.len());
                for (c, &b) in src_b.iter().enumerate() {
                    for (d, s) in alg.mul_basis(g, b) {
                        let r = tgt_b
                            .iter()
                            .position(|x| x == d)
                            .expect("product leaves its block");
                        m.set(r, c, s.clone());
                    }
                }
                m
            })
            .collect();
        Representation {
            alg: alg.clone(),
            dims,
            maps,
        }
    }

    /// The indecomposable injective `D(e_i A)`; at vertex `j` its basis is dual to the block from `j` to `i`.
    pub fn injective(alg: &Arc<Algebra>, i: usize) -> Self {
        let n = alg.n_vertices();
        let dims: Vec<usize> = (0..n).map(|j| alg.block(j, i).len()).collect();
        let maps = (0..alg.n_arrows())
            .map(|a| {
                let ar = alg.arrow(a);
                let g = generator_element(alg, a);
                let (src_b, tgt_b) = (alg.block(ar.src, i), alg.block(ar.tgt, i));
                // (g f)(y) = f(y g) for y in the block from tgt to i
                let mut m = Mat::zeros(tgt_b.len(), src_b.len());
                for (r, &y) in tgt_b.iter().enumerate() {
                    for (d, s) in alg.mul_basis(y, g) {
                        let c = src_b
                            .iter()
                            .position(|x| x == d)
                            .expect("product leaves its block");
                        m.set(r, c, s.clone());
                    }
                }
                m
            })
            .collect();
        Representation {
            alg: alg.clone(),
            dims,
            maps,
        }
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.alg
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn map(&self, a: usize) -> &Mat {
        &self.maps[a]
    }

    pub fn maps(&self) -> &[Mat] {
        &self.maps
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn same_algebra(&self, other: &Representation) -> Result<()> {
        if self.alg.uid() != other.alg.uid() {
            return Err(Error::AlgebraMismatch(
                "modules over different algebras".into(),
            ));
        }
        Ok(())
    }

    /// Action of a basis element, as a matrix from its source vertex space to its target vertex space.
    pub fn action(&self, b: usize) -> Mat {
        let e = self.alg.basis_element(b);
        let mut m = Mat::identity(self.dims[e.src]);
        for &a in &e.word {
            m = self.maps[a].mul(&m);
        }
        m
    }

    /// Action of an element lying in the block from `src` to `tgt`.
    pub fn action_in_block(&self, x: &[Scalar], src: usize, tgt: usize) -> Mat {
        let mut m = Mat::zeros(self.dims[tgt], self.dims[src]);
        for &b in self.alg.block(src, tgt) {
            if !x[b].is_zero() {
                m.add_scaled(&self.action(b), &x[b]);
            }
        }
        m
    }

    /// Verifies `ρ(g)ρ(b) = ρ(g·b)` for every generator `g` and basis element `b`.
    pub fn check_relations(&self) -> Result<()> {
        let alg = self.alg.clone();
        let actions: Vec<Mat> = (0..alg.dim()).map(|b| self.action(b)).collect();
        for a in 0..alg.n_arrows() {
            let g = generator_element(&alg, a);
            let ar = alg.arrow(a);
            for b in 0..alg.dim() {
                let be = alg.basis_element(b);
                if be.tgt != ar.src {
                    continue;
                }
                let lhs = self.maps[a].mul(&actions[b]);
                let mut rhs = Mat::zeros(self.dims[ar.tgt], self.dims[be.src]);
                for (d, s) in alg.mul_basis(g, b) {
                    rhs.add_scaled(&actions[*d], s);
                }
                if lhs != rhs {
                    return Err(Error::InvalidRepresentation(format!(
                        "relation fails for {} after {} (dims {:?})",
                        ar.label,
                        alg.basis_name(b),
                        self.dims
                    )));
                }
            }
        }
        Ok(())
    }

    /// Representation on the given subspaces (column bases), with its inclusion.
    pub fn sub_representation(&self, basis: &[Mat]) -> Result<(Representation, RepMorphism)> {
        let dims: Vec<usize> = basis.iter().map(Mat::cols).collect();
        let maps = (0..self.alg.n_arrows())
            .map(|a| {
                let ar = self.alg.arrow(a);
                let img = self.maps[a].mul(&basis[ar.src]);
                crate::exactlin::solve(&basis[ar.tgt], &img)?.ok_or_else(|| {
                    Error::InvalidRepresentation("subspaces are not closed under the action".into())
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let sub = Representation {
            alg: self.alg.clone(),
            dims,
            maps,
        };
        Ok((
            sub,
            RepMorphism {
                maps: basis.to_vec(),
            },
        ))
    }

    /// Quotient by the given submodule (column bases), with the projection.
    pub fn quotient_representation(&self, basis: &[Mat]) -> Result<(Representation, RepMorphism)> {
        let n = self.alg.n_vertices();
        let mut proj = Vec::with_capacity(n);
        let mut lift = Vec::with_capacity(n);
        for v in 0..n {
            let (p, l) = complement_projection(&basis[v], self.dims[v]);
            proj.push(p);
            lift.push(l);
        }
        let maps = (0..self.alg.n_arrows())
            .map(|a| {
                let ar = self.alg.arrow(a);
                proj[ar.tgt].mul(&self.maps[a]).mul(&lift[ar.src])
            })
            .collect();
        let dims = proj.iter().map(Mat::rows).collect();
        let q = Representation {
            alg: self.alg.clone(),
            dims,
            maps,
        };
        // closure check: the submodule must map into itself
        for a in 0..self.alg.n_arrows() {
            let ar = self.alg.arrow(a);
            let img = proj[ar.tgt].mul(&self.maps[a]).mul(&basis[ar.src]);
            if !img.is_zero() {
                return Err(Error::InvalidRepresentation(
                    "quotient by a non-submodule".into(),
                ));
            }
        }
        Ok((q, RepMorphism { maps: proj }))
    }

    /// Direct sum with the canonical injections and projections.
    pub fn direct_sum(
        alg: &Arc<Algebra>,
        parts: &[Representation],
    ) -> (Representation, Vec<RepMorphism>, Vec<RepMorphism>) {
        let n = alg.n_vertices();
        let dims: Vec<usize> = (0..n)
            .map(|v| parts.iter().map(|p| p.dims[v]).sum())
            .collect();
        let maps = (0..alg.n_arrows())
            .map(|a| {
                let mut m = Mat::zeros(dims[alg.arrow(a).tgt], dims[alg.arrow(a).src]);
                let (mut r, mut c) = (0, 0);
                for p in parts {
                    m.set_block(r, c, &p.maps[a]);
                    r += p.maps[a].rows();
                    c += p.maps[a].cols();
                }
                m
            })
            .collect();
        let mut inj = Vec::new();
        let mut proj = Vec::new();
        let mut offs = vec![0usize; n];
        for p in parts {
            let mut im = Vec::new();
            let mut pm = Vec::new();
            for v in 0..n {
                let mut i = Mat::zeros(dims[v], p.dims[v]);
                for k in 0..p.dims[v] {
                    i.set(offs[v] + k, k, Scalar::one());
                }
                pm.push(i.transpose());
                im.push(i);
                offs[v] += p.dims[v];
            }
            inj.push(RepMorphism { maps: im });
            proj.push(RepMorphism { maps: pm });
        }
        (
            Representation {
                alg: alg.clone(),
                dims,
                maps,
            },
            inj,
            proj,
        )
    }

    pub fn sum(alg: &Arc<Algebra>, parts: &[Representation]) -> Representation {
        Representation::direct_sum(alg, parts).0
    }

    pub fn power(&self, k: usize) -> Representation {
        Representation::sum(&self.alg, &vec![self.clone(); k])
    }

    /// `D M` as a module over the opposite algebra `op`.
    pub fn dual(&self, op: &Arc<Algebra>) -> Result<Representation> {
        if op.n_arrows() != self.alg.n_arrows()
            || (0..op.n_arrows()).any(|a| {
                op.arrow(a).src != self.alg.arrow(a).tgt || op.arrow(a).tgt != self.alg.arrow(a).src
            })
        {
            return Err(Error::AlgebraMismatch("not the opposite algebra".into()));
        }
        Ok(Representation {
            alg: op.clone(),
            dims: self.dims.clone(),
            maps: self.maps.iter().map(Mat::transpose).collect(),
        })
    }

    /// Transports the module along an algebra with identical quiver and basis words.
    pub fn rebase(&self, alg: &Arc<Algebra>) -> Result<Representation> {
        if alg.quiver() != self.alg.quiver() {
            return Err(Error::AlgebraMismatch("quivers differ".into()));
        }
        Representation::new(alg, self.dims.clone(), self.maps.clone())
    }

    pub fn to_data(&self) -> RepresentationData {
        RepresentationData {
            dims: self.dims.clone(),
            maps: self
                .maps
                .iter()
                .enumerate()
                .map(|(a, m)| ArrowMap {
                    arrow: self.alg.arrow(a).label.clone(),
                    rows: m.to_rows(),
                })
                .collect(),
        }
    }

    pub fn from_data(alg: &Arc<Algebra>, data: &RepresentationData) -> Result<Representation> {
        let mut maps = Vec::new();
        for a in 0..alg.n_arrows() {
            let ar = alg.arrow(a);
            let m = data
                .maps
                .iter()
                .find(|m| m.arrow == ar.label)
                .ok_or_else(|| Error::Parse(format!("missing map for arrow {}", ar.label)))?;
            maps.push(Mat::from_rows_with_cols(
                m.rows.clone(),
                data.dims.get(ar.src).copied().unwrap_or(0),
            ));
        }
        if data.maps.len() != alg.n_arrows() {
            return Err(Error::Parse("unexpected arrow maps".into()));
        }
        Representation::new(alg, data.dims.clone(), maps)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_data()).expect("serializable")
    }

    pub fn from_json(alg: &Arc<Algebra>, text: &str) -> Result<Representation> {
        let data: RepresentationData =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Representation::from_data(alg, &data)
    }
}

/// Serialized form of a representation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepresentationData {
    pub dims: Vec<usize>,
    pub maps: Vec<ArrowMap>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrowMap {
    pub arrow: String,
    pub rows: Vec<Vec<Scalar>>,
}

/// Basis index of the word consisting of a single generator.
pub fn generator_element(alg: &Algebra, a: usize) -> usize {
    let ar = alg.arrow(a);
    *alg.block(ar.src, ar.tgt)
        .iter()
        .find(|&&b| alg.basis_element(b).word == [a])
        .expect("every generator is a basis element")
}

/// Projection onto a complement of the column space of `sub`, and a lift of the complement.
fn complement_projection(sub: &Mat, dim: usize) -> (Mat, Mat) {
    let mut e = Echelon::new(dim);
    for c in 0..sub.cols() {
        e.insert(&sub.col(c));
    }
    let mut comp = Vec::new();
    for i in 0..dim {
        let mut u = vec![Scalar::zero(); dim];
        u[i] = Scalar::one();
        if e.insert(&u) {
            comp.push(u);
        }
    }
    let lift = Mat::from_cols(dim, &comp);
    let full = sub.hstack(&lift);
    let inv = full.inverse().expect("subspace basis must be independent");
    let proj = inv.sub_matrix(sub.cols(), comp.len(), 0, dim);
    (proj, lift)
}

/// Column basis of the span of the columns of `m`.
pub fn column_space(m: &Mat) -> Mat {
    let (_, piv) = rref(m);
    m.select_cols(&piv)
}

/// Column basis of the null space of `m`.
pub fn null_space(m: &Mat) -> Mat {
    Mat::from_cols(m.cols(), &m.kernel_basis())
}

impl RepMorphism {
    pub fn identity(m: &Representation) -> Self {
        RepMorphism {
            maps: m.dims.iter().map(|&d| Mat::identity(d)).collect(),
        }
    }

    pub fn zero(m: &Representation, n: &Representation) -> Self {
        RepMorphism {
            maps: m
                .dims
                .iter()
                .zip(&n.dims)
                .map(|(&a, &b)| Mat::zeros(b, a))
                .collect(),
        }
    }

    /// `self ∘ f`.
    pub fn after(&self, f: &RepMorphism) -> RepMorphism {
        RepMorphism {
            maps: self
                .maps
                .iter()
                .zip(&f.maps)
                .map(|(g, f)| g.mul(f))
                .collect(),
        }
    }

    pub fn add(&self, other: &RepMorphism) -> RepMorphism {
        RepMorphism {
            maps: self
                .maps
                .iter()
                .zip(&other.maps)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> RepMorphism {
        RepMorphism {
            maps: self.maps.iter().map(|a| a.scale(s)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.maps.iter().all(Mat::is_zero)
    }

    pub fn is_iso(&self) -> bool {
        self.maps.iter().all(Mat::is_invertible)
    }

    pub fn trace(&self) -> Scalar {
        self.maps.iter().map(Mat::trace).sum()
    }

    pub fn is_morphism(&self, m: &Representation, n: &Representation) -> bool {
        (0..m.alg.n_arrows()).all(|a| {
            let ar = m.alg.arrow(a);
            self.maps[ar.tgt].mul(&m.maps[a]) == n.maps[a].mul(&self.maps[ar.src])
        })
    }

    pub fn flatten(&self) -> Vec<Scalar> {
        self.maps
            .iter()
            .flat_map(|m| m.to_rows().into_iter().flatten())
            .collect()
    }

    pub fn inverse(&self) -> Option<RepMorphism> {
        Some(RepMorphism {
            maps: self
                .maps
                .iter()
                .map(Mat::inverse)
                .collect::<Option<Vec<_>>>()?,
        })
    }

    /// Kernel as a submodule of the source.
    pub fn kernel(&self, m: &Representation) -> Result<(Representation, RepMorphism)> {
        let basis: Vec<Mat> = self.maps.iter().map(null_space).collect();
        m.sub_representation(&basis)
    }

    /// Image as a submodule of the target.
    pub fn image(&self, n: &Representation) -> Result<(Representation, RepMorphism)> {
        let basis: Vec<Mat> = self.maps.iter().map(column_space).collect();
        n.sub_representation(&basis)
    }

    pub fn cokernel(&self, n: &Representation) -> Result<(Representation, RepMorphism)> {
        let basis: Vec<Mat> = self.maps.iter().map(column_space).collect();
        n.quotient_representation(&basis)
    }

    pub fn is_surjective(&self, n: &Representation) -> bool {
        self.maps.iter().zip(&n.dims).all(|(m, &d)| m.rank() == d)
    }

    pub fn is_injective(&self, m: &Representation) -> bool {
        self.maps.iter().zip(&m.dims).all(|(f, &d)| f.rank() == d)
    }
}

/// A basis of `Hom(M, N)` together with fast coordinates.
#[derive(Clone, Debug)]
pub struct HomSpace {
    pub basis: Vec<RepMorphism>,
    free: Vec<usize>,
    src_dims: Vec<usize>,
    tgt_dims: Vec<usize>,
}

impl HomSpace {
    pub fn new(m: &Representation, n: &Representation) -> Result<Self> {
        m.same_algebra(n)?;
        let alg = &m.alg;
        let nv = alg.n_vertices();
        let mut offs = vec![0usize; nv + 1];
        for v in 0..nv {
            offs[v + 1] = offs[v] + n.dims[v] * m.dims[v];
        }
        let unknowns = offs[nv];
        let mut rows: Vec<Vec<Scalar>> = Vec::new();
        for a in 0..alg.n_arrows() {
            let ar = alg.arrow(a);
            let (s, t) = (ar.src, ar.tgt);
            let (ms, mt, ns, nt) = (m.dims[s], m.dims[t], n.dims[s], n.dims[t]);
            let (ma, na) = (&m.maps[a], &n.maps[a]);
            for r in 0..nt {
                for c in 0..ms {
                    let mut row = vec![Scalar::zero(); unknowns];
                    let mut any = false;
                    for k in 0..ns {
                        let x = na.get(r, k);
                        if !x.is_zero() {
                            row[offs[s] + k * ms + c] += x;
                            any = true;
                        }
                    }
                    for k in 0..mt {
                        let x = ma.get(k, c);
                        if !x.is_zero() {
                            row[offs[t] + r * mt + k] -= x;
                            any = true;
                        }
                    }
                    if any {
                        rows.push(row);
                    }
                }
            }
        }
        let sys = Mat::from_rows_with_cols(rows, unknowns);
        let (ker, free) = kernel_with_free(&sys);
        let basis = ker
            .into_iter()
            .map(|v| RepMorphism {
                maps: (0..nv)
                    .map(|i| {
                        let mut f = Mat::zeros(n.dims[i], m.dims[i]);
                        for r in 0..n.dims[i] {
                            for c in 0..m.dims[i] {
                                let x = &v[offs[i] + r * m.dims[i] + c];
                                if !x.is_zero() {
                                    f.set(r, c, x.clone());
                                }
                            }
                        }
                        f
                    })
                    .collect(),
            })
            .collect();
        Ok(HomSpace {
            basis,
            free,
            src_dims: m.dims.clone(),
            tgt_dims: n.dims.clone(),
        })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of a morphism known to lie in this Hom space.
    pub fn coordinates(&self, f: &RepMorphism) -> Vec<Scalar> {
        let flat = f.flatten();
        self.free.iter().map(|&i| flat[i].clone()).collect()
    }

    pub fn combine(&self, coeffs: &[Scalar]) -> RepMorphism {
        let mut out = RepMorphism {
            maps: self
                .src_dims
                .iter()
                .zip(&self.tgt_dims)
                .map(|(&a, &b)| Mat::zeros(b, a))
                .collect(),
        };
        for (c, b) in coeffs.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            for (o, m) in out.maps.iter_mut().zip(&b.maps) {
                o.add_scaled(m, c);
            }
        }
        out
    }
}

pub fn hom_basis(m: &Representation, n: &Representation) -> Result<Vec<RepMorphism>> {
    Ok(HomSpace::new(m, n)?.basis)
}

pub fn hom_dim(m: &Representation, n: &Representation) -> usize {
    if m.is_zero() || n.is_zero() || m.dims.iter().zip(&n.dims).all(|(a, b)| a * b == 0) {
        return 0;
    }
    HomSpace::new(m, n).map(|h| h.dim()).unwrap_or(0)
}

/// Result of an indecomposability test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Indecomposability {
    pub indecomposable: bool,
    /// `dim End/rad`.
    pub residue_dim: usize,
}

impl Indecomposability {
    /// True when `End/rad` is the base field.
    pub fn absolutely(&self) -> bool {
        self.indecomposable && self.residue_dim == 1
    }
}

/// `dim End(M)/rad End(M)` from the trace form of `End(M)` acting on `M`.
pub fn end_residue_dim(m: &Representation) -> Result<usize> {
    let e = hom_basis(m, m)?;
    let r = e.len();
    let mut g = Mat::zeros(r, r);
    for i in 0..r {
        for j in i..r {
            let t = e[i].after(&e[j]).trace();
            g.set(i, j, t.clone());
            g.set(j, i, t);
        }
    }
    Ok(g.rank())
}

/// Basis of `rad End(M)`: the kernel of the trace form of `End(M)` on `M`.
pub fn radical_endomorphisms(m: &Representation) -> Result<Vec<RepMorphism>> {
    let h = HomSpace::new(m, m)?;
    let r = h.dim();
    let mut g = Mat::zeros(r, r);
    for i in 0..r {
        for j in i..r {
            let t = h.basis[i].after(&h.basis[j]).trace();
            g.set(i, j, t.clone());
            g.set(j, i, t);
        }
    }
    Ok(kernel_basis(&g).iter().map(|c| h.combine(c)).collect())
}

pub fn is_indecomposable(m: &Representation) -> Result<Indecomposability> {
    if m.is_zero() {
        return Err(Error::ZeroModule);
    }
    let residue_dim = end_residue_dim(m)?;
    if residue_dim == 1 {
        return Ok(Indecomposability {
            indecomposable: true,
            residue_dim,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(default_seed());
    match split_once(m, &mut rng)? {
        Some(_) => Ok(Indecomposability { indecomposable: false, residue_dim }),
        None => Err(Error::ResidueField(format!(
            "module with dims {:?} has End/rad of dimension {residue_dim} and no rational idempotent was found",
            m.dims
        ))),
    }
}

fn random_combination(h: &HomSpace, rng: &mut ChaCha8Rng, range: i64) -> RepMorphism {
    let c: Vec<Scalar> = (0..h.dim())
        .map(|_| Scalar::from(rng.gen_range(-range..=range)))
        .collect();
    h.combine(&c)
}

/// Tests `M ≅ N`, returning an isomorphism `M → N` on success.
pub fn find_isomorphism(m: &Representation, n: &Representation) -> Result<Option<RepMorphism>> {
    find_isomorphism_seeded(m, n, default_seed())
}

pub fn find_isomorphism_seeded(
    m: &Representation,
    n: &Representation,
    seed: u64,
) -> Result<Option<RepMorphism>> {
    m.same_algebra(n)?;
    if m.dims != n.dims {
        return Ok(None);
    }
    if m.is_zero() {
        return Ok(Some(RepMorphism::identity(m)));
    }
    let h = HomSpace::new(m, n)?;
    if h.dim() == 0 {
        return Ok(None);
    }
    let mut rng =
        ChaCha8Rng::seed_from_u64(seed ^ (m.total_dim() as u64).wrapping_mul(0x9e37_79b9));
    for _ in 0..6 {
        let f = random_combination(&h, &mut rng, 500);
        if f.is_iso() {
            return Ok(Some(f));
        }
    }
    for f in &h.basis {
        if f.is_iso() {
            return Ok(Some(f.clone()));
        }
    }
    // If every composite N → M → N... has zero trace, no isomorphism exists.
    let back = hom_basis(n, m)?;
    let mut nonzero = None;
    'outer: for f in &h.basis {
        for g in &back {
            if !g.after(f).trace().is_zero() {
                nonzero = Some(f.clone());
                break 'outer;
            }
        }
    }
    if nonzero.is_none() {
        return Ok(None);
    }
    // Rare path: compare Krull–Schmidt decompositions.
    let dm = decompose(m)?;
    let dn = decompose(n)?;
    let mut used = vec![false; dn.parts.len()];
    let mut comps = Vec::new();
    for p in &dm.parts {
        let mut found = None;
        for (j, q) in dn.parts.iter().enumerate() {
            if used[j] {
                continue;
            }
            if let Some(iso) = indecomposable_iso(p, q)? {
                found = Some((j, iso));
                break;
            }
        }
        match found {
            Some((j, iso)) => {
                used[j] = true;
                comps.push((j, iso));
            }
            None => return Ok(None),
        }
    }
    // assemble M ≅ ⊕ parts ≅ ⊕ parts' ≅ N
    let wm = dm.witness(m);
    let wn = dn.witness(n);
    let wm_inv = wm
        .inverse()
        .ok_or_else(|| Error::Verification("decomposition witness not invertible".into()))?;
    let alg = m.algebra();
    let (_, _, proj_m) = Representation::direct_sum(alg, &dm.parts);
    let (_, inj_n, _) = Representation::direct_sum(alg, &dn.parts);
    let mut total = RepMorphism::zero(m, n);
    for (i, (j, iso)) in comps.iter().enumerate() {
        let piece = wn
            .after(&inj_n[*j])
            .after(iso)
            .after(&proj_m[i])
            .after(&wm_inv);
        total = total.add(&piece);
    }
    if total.is_iso() && total.is_morphism(m, n) {
        Ok(Some(total))
    } else {
        Err(Error::Verification(
            "assembled isomorphism failed to verify".into(),
        ))
    }
}

/// Isomorphism test between indecomposables with local endomorphism rings.
fn indecomposable_iso(p: &Representation, q: &Representation) -> Result<Option<RepMorphism>> {
    if p.dims != q.dims {
        return Ok(None);
    }
    let h = hom_basis(p, q)?;
    let back = hom_basis(q, p)?;
    for f in &h {
        for g in &back {
            if !g.after(f).trace().is_zero() {
                // g∘f is not nilpotent, hence invertible in a local ring
                return Ok(Some(f.clone()));
            }
        }
    }
    Ok(None)
}

pub fn is_isomorphic(m: &Representation, n: &Representation) -> bool {
    matches!(find_isomorphism(m, n), Ok(Some(_)))
}

/// Krull–Schmidt decomposition of a module.
#[derive(Clone, Debug)]
pub struct Decomposition {
    /// Indecomposable summands in splitting order.
    pub parts: Vec<Representation>,
    /// Inclusion of each part into the decomposed module.
    pub inclusions: Vec<RepMorphism>,
    /// Indices of parts grouped into isomorphism classes.
    pub classes: Vec<Vec<usize>>,
}

impl Decomposition {
    /// Representatives with multiplicities.
    pub fn summands(&self) -> Vec<(Representation, usize)> {
        self.classes
            .iter()
            .map(|c| (self.parts[c[0]].clone(), c.len()))
            .collect()
    }

    /// One representative per isomorphism class.
    pub fn basic_parts(&self) -> Vec<Representation> {
        self.classes
            .iter()
            .map(|c| self.parts[c[0]].clone())
            .collect()
    }

    /// The isomorphism `⊕ parts → M`.
    pub fn witness(&self, m: &Representation) -> RepMorphism {
        let nv = m.dims.len();
        RepMorphism {
            maps: (0..nv)
                .map(|v| {
                    let mut out = Mat::zeros(m.dims[v], 0);
                    for inc in &self.inclusions {
                        out = out.hstack(&inc.maps[v]);
                    }
                    out
                })
                .collect(),
        }
    }
}

pub fn decompose(m: &Representation) -> Result<Decomposition> {
    decompose_seeded(m, default_seed())
}

pub fn decompose_seeded(m: &Representation, seed: u64) -> Result<Decomposition> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut parts = Vec::new();
    let mut inclusions = Vec::new();
    if !m.is_zero() {
        split_recursive(
            m,
            RepMorphism::identity(m),
            &mut rng,
            &mut parts,
            &mut inclusions,
        )?;
    }
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for (i, p) in parts.iter().enumerate() {
        let mut placed = false;
        for c in classes.iter_mut() {
            if indecomposable_iso(&parts[c[0]], p)?.is_some() {
                c.push(i);
                placed = true;
                break;
            }
        }
        if !placed {
            classes.push(vec![i]);
        }
    }
    Ok(Decomposition {
        parts,
        inclusions,
        classes,
    })
}

fn split_recursive(
    m: &Representation,
    inc: RepMorphism,
    rng: &mut ChaCha8Rng,
    parts: &mut Vec<Representation>,
    incs: &mut Vec<RepMorphism>,
) -> Result<()> {
    let residue = end_residue_dim(m)?;
    if residue == 1 {
        parts.push(m.clone());
        incs.push(inc);
        return Ok(());
    }
    match split_once(m, rng)? {
        Some((a, b)) => {
            for basis in [a, b] {
                let (sub, i) = m.sub_representation(&basis)?;
                split_recursive(&sub, inc.after(&i), rng, parts, incs)?;
            }
            Ok(())
        }
        None => Err(Error::ResidueField(format!(
            "dims {:?}: End/rad has dimension {residue} but no rational idempotent was found",
            m.dims
        ))),
    }
}

/// Fitting decomposition of `ψ`: kernel and image of a high power.
fn fitting(m: &Representation, psi: &RepMorphism) -> Option<(Vec<Mat>, Vec<Mat>)> {
    let n = m.total_dim().max(1);
    let mut p = psi.clone();
    let mut k = 1;
    while k < n {
        p = p.after(&p);
        k *= 2;
    }
    let ker: Vec<Mat> = p.maps.iter().map(null_space).collect();
    let img: Vec<Mat> = p.maps.iter().map(column_space).collect();
    let kd: usize = ker.iter().map(Mat::cols).sum();
    let id: usize = img.iter().map(Mat::cols).sum();
    (kd > 0 && id > 0).then_some((ker, img))
}

/// Tries to split `M` into two nonzero submodules.
fn split_once(m: &Representation, rng: &mut ChaCha8Rng) -> Result<Option<(Vec<Mat>, Vec<Mat>)>> {
    let h = HomSpace::new(m, m)?;
    let nv = m.dims.len();
    for attempt in 0..60 {
        let phi = if attempt % 2 == 0 {
            random_combination(&h, rng, 3)
        } else {
            // an endomorphism killing a random vector at some vertex
            let occupied: Vec<usize> = (0..nv).filter(|&v| m.dims[v] > 0).collect();
            let v = occupied[rng.gen_range(0..occupied.len())];
            let u: Vec<Scalar> = (0..m.dims[v])
                .map(|_| Scalar::from(rng.gen_range(-3i64..=3)))
                .collect();
            let cols: Vec<Vec<Scalar>> = h.basis.iter().map(|f| f.maps[v].mul_vec(&u)).collect();
            let sys = Mat::from_cols(m.dims[v], &cols);
            let ker = sys.kernel_basis();
            if ker.is_empty() {
                continue;
            }
            let mut c = vec![Scalar::zero(); h.dim()];
            for k in &ker {
                let r = Scalar::from(rng.gen_range(-3i64..=3));
                for (ci, ki) in c.iter_mut().zip(k) {
                    *ci += &(&r * ki);
                }
            }
            h.combine(&c)
        };
        let v = (0..nv)
            .filter(|&v| m.dims[v] > 0)
            .min_by_key(|&v| m.dims[v])
            .unwrap();
        let roots = rational_roots(&char_poly(&phi.maps[v]));
        let candidates = if roots.is_empty() {
            vec![Scalar::zero()]
        } else {
            roots
        };
        for lambda in candidates {
            let shifted = RepMorphism {
                maps: phi
                    .maps
                    .iter()
                    .map(|f| f.sub(&Mat::identity(f.rows()).scale(&lambda)))
                    .collect(),
            };
            if let Some(s) = fitting(m, &shifted) {
                return Ok(Some(s));
            }
        }
    }
    Ok(None)
}

/// `Λ ⊗_{kQ} M` for a module over the base of a tensor algebra.
pub fn induction(lambda: &Arc<Algebra>, m: &Representation) -> Result<Representation> {
    let prov = lambda
        .provenance()
        .ok_or_else(|| Error::Provenance("not a tensor algebra".into()))?;
    if prov.base.uid() != m.alg.uid() {
        return Err(Error::Provenance(
            "module is not over the base algebra".into(),
        ));
    }
    let r = &prov.local;
    let d = r.dim();
    let left: Vec<Mat> = (0..r.n_arrows())
        .map(|g| left_mult(r, generator_element(r, g)))
        .collect();
    let dims: Vec<usize> = m.dims.iter().map(|&k| k * d).collect();
    let maps = prov
        .arrow_origin
        .iter()
        .map(|o| match *o {
            ArrowOrigin::Base(a) => Mat::identity(d).kron(&m.maps[a]),
            ArrowOrigin::Loop { vertex, generator } => {
                left[generator].kron(&Mat::identity(m.dims[vertex]))
            }
        })
        .collect();
    Representation::new(lambda, dims, maps)
}

pub fn induce_morphism(lambda: &Arc<Algebra>, f: &RepMorphism) -> Result<RepMorphism> {
    let prov = lambda
        .provenance()
        .ok_or_else(|| Error::Provenance("not a tensor algebra".into()))?;
    let d = prov.local.dim();
    Ok(RepMorphism {
        maps: f.maps.iter().map(|x| Mat::identity(d).kron(x)).collect(),
    })
}

/// Restriction of scalars along `kQ → R ⊗ kQ`.
pub fn restriction(n: &Representation) -> Result<Representation> {
    let prov = n
        .alg
        .provenance()
        .ok_or_else(|| Error::Provenance("not a tensor algebra".into()))?;
    let base = &prov.base;
    let maps = (0..base.n_arrows())
        .map(|a| {
            let idx = prov
                .arrow_origin
                .iter()
                .position(|o| *o == ArrowOrigin::Base(a))
                .unwrap();
            n.maps[idx].clone()
        })
        .collect();
    Representation::new(base, n.dims.clone(), maps)
}

/// Matrix of left multiplication by a basis element on a one-vertex algebra.
fn left_mult(r: &Algebra, b: usize) -> Mat {
    let d = r.dim();
    let mut m = Mat::zeros(d, d);
    for c in 0..d {
        for (e, s) in r.mul_basis(b, c) {
            m.set(*e, c, s.clone());
        }
    }
    m
}
