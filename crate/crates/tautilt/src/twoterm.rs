//! Two-term complexes of projectives and their homotopy classes of maps.

use std::sync::Arc;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::exactlin::{kernel_basis, solve, solve_vec, Echelon, Mat, Scalar};
use crate::homology::{min_presentation, proj_sum, ProjMap};
use crate::rep::{
    hom_basis, is_indecomposable, is_isomorphic, radical_endomorphisms, RepMorphism, Representation,
};
use crate::tau::{
    basic_summands, bongartz, gen_membership, projective_vertex, SignedObject,
    SupportTauRigidObject,
};

/// A complex `P_{-1} → P_0` concentrated in degrees −1 and 0.
#[derive(Clone, Debug, PartialEq)]
pub struct TwoTermComplex {
    pub d: ProjMap,
}

impl TwoTermComplex {
    pub fn new(d: ProjMap) -> Self {
        TwoTermComplex { d }
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        self.d.algebra()
    }

    pub fn minus1(&self) -> &[usize] {
        &self.d.src
    }

    pub fn zero(&self) -> &[usize] {
        &self.d.tgt
    }

    /// `0 → ⊕P(v)`.
    pub fn stalk(alg: &Arc<Algebra>, verts: &[usize]) -> Self {
        TwoTermComplex::new(ProjMap::zero(alg, &[], verts))
    }

    /// `⊕P(v) → 0`, the shifted projective.
    pub fn shifted(alg: &Arc<Algebra>, verts: &[usize]) -> Self {
        TwoTermComplex::new(ProjMap::zero(alg, verts, &[]))
    }

    pub fn direct_sum(&self, other: &TwoTermComplex) -> Self {
        TwoTermComplex::new(self.d.direct_sum(&other.d))
    }

    pub fn sum(alg: &Arc<Algebra>, parts: &[TwoTermComplex]) -> Self {
        parts.iter().fold(
            TwoTermComplex::new(ProjMap::zero(alg, &[], &[])),
            |acc, x| acc.direct_sum(x),
        )
    }

    /// Cokernel of the differential.
    pub fn h0(&self) -> Result<Representation> {
        let alg = self.algebra();
        Ok(self
            .d
            .to_morphism()
            .cokernel(&proj_sum(alg, self.zero()))?
            .0)
    }

    pub fn rebase(&self, alg: &Arc<Algebra>) -> Self {
        TwoTermComplex::new(self.d.rebase(alg))
    }
}

/// Minimal projective presentation `P_1 → P_0` as a two-term complex.
pub fn presentation_complex(m: &Representation) -> Result<TwoTermComplex> {
    Ok(TwoTermComplex::new(min_presentation(m)?.d1))
}

/// Two-term complex of a signed indecomposable.
pub fn signed_complex(o: &SignedObject) -> Result<TwoTermComplex> {
    if o.shifted {
        let v = projective_vertex(&o.module).ok_or_else(|| Error::NotProjective(o.label()))?;
        Ok(TwoTermComplex::shifted(o.module.algebra(), &[v]))
    } else {
        presentation_complex(&o.module)
    }
}

/// A chain map `(f_{-1}, f_0)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ChainMap {
    pub f1: ProjMap,
    pub f0: ProjMap,
}

impl ChainMap {
    pub fn zero(x: &TwoTermComplex, y: &TwoTermComplex) -> Self {
        let alg = x.algebra();
        ChainMap {
            f1: ProjMap::zero(alg, x.minus1(), y.minus1()),
            f0: ProjMap::zero(alg, x.zero(), y.zero()),
        }
    }

    pub fn identity(x: &TwoTermComplex) -> Self {
        let alg = x.algebra();
        ChainMap {
            f1: ProjMap::identity(alg, x.minus1()),
            f0: ProjMap::identity(alg, x.zero()),
        }
    }

    /// `g ∘ self`.
    pub fn then(&self, g: &ChainMap) -> ChainMap {
        ChainMap {
            f1: self.f1.then(&g.f1),
            f0: self.f0.then(&g.f0),
        }
    }

    pub fn add(&self, other: &ChainMap) -> ChainMap {
        ChainMap {
            f1: self.f1.add(&other.f1),
            f0: self.f0.add(&other.f0),
        }
    }

    pub fn scale(&self, s: &Scalar) -> ChainMap {
        ChainMap {
            f1: self.f1.scale(s),
            f0: self.f0.scale(s),
        }
    }

    /// Map out of a direct sum: `[self | other]`.
    pub fn hconcat(&self, other: &ChainMap) -> ChainMap {
        ChainMap {
            f1: self.f1.hconcat(&other.f1),
            f0: self.f0.hconcat(&other.f0),
        }
    }

    pub fn is_chain_map(&self, x: &TwoTermComplex, y: &TwoTermComplex) -> bool {
        x.d.then(&self.f0) == self.f1.then(&y.d)
    }

    pub fn coords(&self) -> Vec<Scalar> {
        let mut c = self.f1.coords();
        c.extend(self.f0.coords());
        c
    }

    pub fn rebase(&self, alg: &Arc<Algebra>) -> ChainMap {
        ChainMap {
            f1: self.f1.rebase(alg),
            f0: self.f0.rebase(alg),
        }
    }
}

/// `Hom_K(X, Y)`: chain maps modulo null-homotopic ones.
#[derive(Clone, Debug)]
pub struct HomK {
    pub x: TwoTermComplex,
    pub y: TwoTermComplex,
    /// Representatives of a basis of the quotient.
    pub basis: Vec<ChainMap>,
    /// Columns: basis coordinates followed by spanning null-homotopic maps.
    solver: Mat,
}

impl HomK {
    pub fn new(x: &TwoTermComplex, y: &TwoTermComplex) -> Self {
        let alg = x.algebra().clone();
        let b1 = ProjMap::hom_basis(&alg, x.minus1(), y.minus1());
        let b0 = ProjMap::hom_basis(&alg, x.zero(), y.zero());
        let (n1, n0) = (b1.len(), b0.len());
        let target_len = ProjMap::hom_dim(&alg, x.minus1(), y.zero());
        // unknowns (f1, f0) with f0 ∘ d_X − d_Y ∘ f1 = 0
        let mut cols: Vec<Vec<Scalar>> = Vec::with_capacity(n1 + n0);
        for f in &b1 {
            cols.push(f.then(&y.d).scale(&Scalar::from(-1)).coords());
        }
        for f in &b0 {
            cols.push(x.d.then(f).coords());
        }
        let sys = Mat::from_cols(target_len, &cols);
        let kernel = if n1 + n0 == 0 {
            Vec::new()
        } else {
            kernel_basis(&sys)
        };
        let combine = |v: &[Scalar]| -> ChainMap {
            let mut f1 = ProjMap::zero(&alg, x.minus1(), y.minus1());
            for (c, b) in v[..n1].iter().zip(&b1) {
                if !c.is_zero() {
                    f1 = f1.add(&b.scale(c));
                }
            }
            let mut f0 = ProjMap::zero(&alg, x.zero(), y.zero());
            for (c, b) in v[n1..].iter().zip(&b0) {
                if !c.is_zero() {
                    f0 = f0.add(&b.scale(c));
                }
            }
            ChainMap { f1, f0 }
        };
        let mut homotopies = Vec::new();
        let mut span = Echelon::new(n1 + n0);
        for h in ProjMap::hom_basis(&alg, x.zero(), y.minus1()) {
            let c = ChainMap {
                f1: x.d.then(&h),
                f0: h.then(&y.d),
            }
            .coords();
            if span.insert(&c) {
                homotopies.push(c);
            }
        }
        let mut basis = Vec::new();
        let mut basis_coords = Vec::new();
        for v in kernel {
            let m = combine(&v);
            let c = m.coords();
            if span.insert(&c) {
                basis.push(m);
                basis_coords.push(c);
            }
        }
        basis_coords.extend(homotopies);
        let solver = Mat::from_cols(n1 + n0, &basis_coords);
        HomK {
            x: x.clone(),
            y: y.clone(),
            basis,
            solver,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of the class of a chain map.
    pub fn coordinates(&self, f: &ChainMap) -> Result<Vec<Scalar>> {
        if self.basis.is_empty() {
            return Ok(Vec::new());
        }
        let sol = solve_vec(&self.solver, &f.coords())
            .ok_or_else(|| Error::Verification("not a chain map between these complexes".into()))?;
        Ok(sol[..self.dim()].to_vec())
    }

    pub fn combine(&self, coeffs: &[Scalar]) -> ChainMap {
        let mut out = ChainMap::zero(&self.x, &self.y);
        for (c, b) in coeffs.iter().zip(&self.basis) {
            if !c.is_zero() {
                out = out.add(&b.scale(c));
            }
        }
        out
    }

    pub fn is_null_homotopic(&self, f: &ChainMap) -> Result<bool> {
        Ok(self.coordinates(f)?.iter().all(Scalar::is_zero))
    }
}

/// `Hom_K(X, Y[1])` as maps `X^{-1} → Y^0` modulo homotopy.
pub fn hom_k_shift1(x: &TwoTermComplex, y: &TwoTermComplex) -> Vec<ProjMap> {
    let alg = x.algebra();
    let mut span = Echelon::new(ProjMap::hom_dim(alg, x.minus1(), y.zero()));
    for f in ProjMap::hom_basis(alg, x.zero(), y.zero()) {
        span.insert(&x.d.then(&f).coords());
    }
    for g in ProjMap::hom_basis(alg, x.minus1(), y.minus1()) {
        span.insert(&g.then(&y.d).coords());
    }
    ProjMap::hom_basis(alg, x.minus1(), y.zero())
        .into_iter()
        .filter(|f| span.insert(&f.coords()))
        .collect()
}

/// `Hom_K(X, Y[-1])`: maps `X^0 → Y^{-1}` killed by both differentials.
pub fn hom_k_shift_minus1(x: &TwoTermComplex, y: &TwoTermComplex) -> Vec<ProjMap> {
    let alg = x.algebra();
    let basis = ProjMap::hom_basis(alg, x.zero(), y.minus1());
    if basis.is_empty() {
        return Vec::new();
    }
    let a = ProjMap::hom_dim(alg, x.minus1(), y.minus1());
    let b = ProjMap::hom_dim(alg, x.zero(), y.zero());
    let cols: Vec<Vec<Scalar>> = basis
        .iter()
        .map(|f| {
            let mut c = x.d.then(f).coords();
            c.extend(f.then(&y.d).coords());
            c
        })
        .collect();
    kernel_basis(&Mat::from_cols(a + b, &cols))
        .into_iter()
        .map(|v| {
            v.iter()
                .zip(&basis)
                .fold(ProjMap::zero(alg, x.zero(), y.minus1()), |acc, (c, f)| {
                    acc.add(&f.scale(c))
                })
        })
        .collect()
}

/// `dim Hom_K(X, Y[shift])` for `shift ∈ {-1, 0, 1}`.
pub fn hom_upto_homotopy(x: &TwoTermComplex, y: &TwoTermComplex, shift: i32) -> Result<usize> {
    match shift {
        0 => Ok(HomK::new(x, y).dim()),
        1 => Ok(hom_k_shift1(x, y).len()),
        -1 => Ok(hom_k_shift_minus1(x, y).len()),
        s => Err(Error::Shape(format!("shift {s} is outside -1..=1"))),
    }
}

/// The two-term complex `P_1 ⊕ P → P_0` of a support τ-rigid pair.
pub fn pair_complex(alg: &Arc<Algebra>, u: &SupportTauRigidObject) -> Result<TwoTermComplex> {
    let mut parts = Vec::new();
    for m in &u.m {
        parts.push(presentation_complex(m)?);
    }
    parts.push(TwoTermComplex::shifted(alg, &u.p));
    Ok(TwoTermComplex::sum(alg, &parts))
}

pub fn is_presilting(t: &TwoTermComplex) -> bool {
    hom_k_shift1(t, t).is_empty()
}

/// Two-term silting complexes, one per support τ-tilting pair.
pub fn two_silt(
    alg: &Arc<Algebra>,
    pairs: &[SupportTauRigidObject],
) -> Result<Vec<TwoTermComplex>> {
    let n = alg.n_vertices();
    pairs
        .iter()
        .map(|u| {
            let t = pair_complex(alg, u)?;
            if u.size() != n || !is_presilting(&t) {
                return Err(Error::Verification(format!(
                    "{} does not give a silting complex",
                    u.label()
                )));
            }
            Ok(t)
        })
        .collect()
}

/// Basis of `rad End_K(X)` for `X` indecomposable, via the trace form of the
/// regular representation.
pub fn radical_end_k(x: &TwoTermComplex) -> Result<Vec<ChainMap>> {
    let h = HomK::new(x, x);
    let r = h.dim();
    let mut left: Vec<Mat> = Vec::with_capacity(r);
    for a in &h.basis {
        let cols: Vec<Vec<Scalar>> = h
            .basis
            .iter()
            .map(|b| h.coordinates(&b.then(a)))
            .collect::<Result<_>>()?;
        left.push(Mat::from_cols(r, &cols));
    }
    let mut g = Mat::zeros(r, r);
    for i in 0..r {
        for j in i..r {
            let t = left[i].mul(&left[j]).trace();
            g.set(i, j, t.clone());
            g.set(j, i, t);
        }
    }
    Ok(kernel_basis(&g).iter().map(|c| h.combine(c)).collect())
}

/// A right approximation `α: X → Y` with `X` a sum of copies of given indecomposables.
#[derive(Clone, Debug)]
pub struct RightApproximation {
    /// Index into the source list for each summand of `source`.
    pub which: Vec<usize>,
    pub source: TwoTermComplex,
    pub map: ChainMap,
}

/// Minimal right `add(⊕ sources)`-approximation of `target`; the sources must be
/// pairwise non-isomorphic indecomposables.
pub fn minimal_right_approximation(
    target: &TwoTermComplex,
    sources: &[TwoTermComplex],
) -> Result<RightApproximation> {
    let alg = target.algebra().clone();
    let homs: Vec<HomK> = sources.iter().map(|x| HomK::new(x, target)).collect();
    let mut which = Vec::new();
    let mut source = TwoTermComplex::sum(&alg, &[]);
    let mut map = ChainMap::zero(&source, target);
    for (i, xi) in sources.iter().enumerate() {
        let mut span = Echelon::new(homs[i].dim());
        for (j, xj) in sources.iter().enumerate() {
            let rad = if i == j {
                radical_end_k(xi)?
            } else {
                HomK::new(xi, xj).basis
            };
            for rho in &rad {
                for g in &homs[j].basis {
                    span.insert(&homs[i].coordinates(&rho.then(g))?);
                }
            }
        }
        for (k, g) in homs[i].basis.iter().enumerate() {
            let mut u = vec![Scalar::zero(); homs[i].dim()];
            u[k] = Scalar::one();
            if span.insert(&u) {
                which.push(i);
                source = source.direct_sum(xi);
                map = map.hconcat(g);
            }
        }
    }
    Ok(RightApproximation { which, source, map })
}

/// `H^0` of the cocone of `α: X → Y`, the complex
/// `X^{-1} → X^0 ⊕ Y^{-1} → Y^0` in degrees −1, 0, 1.
pub fn cocone_h0(
    x: &TwoTermComplex,
    y: &TwoTermComplex,
    alpha: &ChainMap,
) -> Result<Representation> {
    let alg = x.algebra();
    let phi = alpha.f0.hconcat(&y.d);
    let psi = x.d.vconcat(&alpha.f1.scale(&Scalar::from(-1)));
    let mid = proj_sum(alg, &phi.src);
    let (k, inc) = phi.to_morphism().kernel(&mid)?;
    let psi_m = psi.to_morphism();
    let mut maps = Vec::with_capacity(alg.n_vertices());
    for v in 0..alg.n_vertices() {
        let lifted = if k.dims()[v] == 0 {
            Mat::zeros(0, psi_m.maps[v].cols())
        } else {
            solve(&inc.maps[v], &psi_m.maps[v])?
                .ok_or_else(|| Error::Verification("cocone is not a complex".into()))?
        };
        maps.push(lifted);
    }
    Ok(RepMorphism { maps }.cokernel(&k)?.0)
}

/// The indecomposable summand `B_M^V` of the Bongartz completion of `M`.
pub fn b_m_v(m: &Representation, v: &SignedObject) -> Result<Representation> {
    let parts = basic_summands(m)?;
    let out = if v.shifted {
        let q = projective_vertex(&v.module).ok_or_else(|| Error::NotProjective(v.label()))?;
        left_approximation_target(&bongartz(m)?, q)?
    } else {
        if !gen_membership(m, &v.module)? {
            return Err(Error::NotInSubcategory(format!(
                "{} is not in Gen M and not a shifted projective",
                v.label()
            )));
        }
        let sources: Vec<TwoTermComplex> = parts
            .iter()
            .map(presentation_complex)
            .collect::<Result<_>>()?;
        let y = presentation_complex(&v.module)?;
        let alpha = minimal_right_approximation(&y, &sources)?;
        cocone_h0(&alpha.source, &y, &alpha.map)?
    };
    if out.is_zero() || !is_indecomposable(&out)?.indecomposable {
        return Err(Error::Verification(format!(
            "B_M^V for {} has dims {:?} and is not indecomposable",
            v.label(),
            out.dims()
        )));
    }
    Ok(out)
}

/// Target of the minimal left `add(⊕ parts)`-approximation of `P(q)`; must be
/// a single indecomposable with multiplicity one.
fn left_approximation_target(parts: &[Representation], q: usize) -> Result<Representation> {
    let mut hits = Vec::new();
    for (i, bi) in parts.iter().enumerate() {
        let d = bi.dims()[q];
        if d == 0 {
            continue;
        }
        let mut span = Echelon::new(d);
        for (j, bj) in parts.iter().enumerate() {
            let rad = if i == j {
                radical_endomorphisms(bi)?
            } else {
                hom_basis(bj, bi)?
            };
            for rho in &rad {
                let mq = &rho.maps[q];
                for c in 0..mq.cols() {
                    span.insert(&mq.col(c));
                }
            }
        }
        let mult = d - span.dim();
        if mult > 0 {
            hits.push((i, mult));
        }
    }
    match hits.as_slice() {
        [(i, 1)] => Ok(parts[*i].clone()),
        _ => Err(Error::Verification(format!(
            "left approximation of P({}) has summands {hits:?}",
            q + 1
        ))),
    }
}

/// Whether two basic lists of modules agree up to isomorphism and order.
pub fn same_iso_classes(a: &[Representation], b: &[Representation]) -> bool {
    a.len() == b.len() && a.iter().all(|x| b.iter().any(|y| is_isomorphic(x, y)))
}
