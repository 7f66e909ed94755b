//! τ-perpendicular subcategories `J(U)`, their algebras `Γ_U` with explicit
//! equivalences, identity keys, and the ε-maps.

use std::collections::HashMap;
use std::sync::Arc;

use itertools::Itertools;
use serde::Serialize;

use crate::algebra::{
    algebra_from_structure_constants, opposite_arc, path_algebra, Algebra, Quiver,
    StructureConstants,
};
use crate::error::{Error, Result};
use crate::exactlin::{solve, solve_vec, Echelon, Mat, Scalar};
use crate::homology::{ext_dim, min_presentation, pd_capped, tau, Pd};
use crate::rep::{
    generator_element, hom_basis, hom_dim, is_isomorphic, HomSpace, RepMorphism, Representation,
};
use crate::tau::{
    basic_summands, bongartz, gen_membership, indec_tau_rigid, projective_vertex,
    split_projective_split, torsion_parts, SignedObject, SupportTauRigidObject, TauCatalog,
};
use crate::twoterm::b_m_v;

/// The algebra with no vertices, whose module category is zero.
pub fn zero_algebra() -> Arc<Algebra> {
    Arc::new(
        path_algebra(Quiver::new(Vec::new(), Vec::new()).expect("empty quiver"))
            .expect("empty path algebra"),
    )
}

fn unit(dim: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); dim];
    v[i] = Scalar::one();
    v
}

/// Passage from `mod A` to `mod A/⟨e⟩`, the modules vanishing at `removed`.
#[derive(Debug)]
pub struct IdemStep {
    pub from: Arc<Algebra>,
    pub to: Arc<Algebra>,
    pub removed: Vec<usize>,
    pub kept: Vec<usize>,
    chosen: Vec<usize>,
    /// Quotient coordinates on the chosen basis elements.
    proj: Mat,
    new_to_old: Vec<Vec<Scalar>>,
    old_to_new: Mat,
}

impl IdemStep {
    pub fn new(from: &Arc<Algebra>, removed: &[usize]) -> Result<Self> {
        let dim = from.dim();
        let n = from.n_vertices();
        let kept: Vec<usize> = (0..n).filter(|v| !removed.contains(v)).collect();
        let mut ideal = Echelon::new(dim);
        for b in 0..dim {
            let e = from.basis_element(b);
            if removed.contains(&e.src) || removed.contains(&e.tgt) {
                ideal.insert(&from.unit_vector(b));
            }
        }
        for &v in removed {
            for &s in &kept {
                for &t in &kept {
                    for &x in from.block(v, t) {
                        for &y in from.block(s, v) {
                            let mut p = vec![Scalar::zero(); dim];
                            for (d, c) in from.mul_basis(x, y) {
                                p[*d] += c;
                            }
                            ideal.insert(&p);
                        }
                    }
                }
            }
        }
        let ideal_basis = ideal.basis().to_vec();
        let mut span = ideal.clone();
        let mut chosen = Vec::new();
        let idems: Vec<usize> = kept.iter().map(|&v| from.idempotent(v)).collect();
        for b in idems.iter().copied().chain(0..dim) {
            if !chosen.contains(&b) && span.insert(&from.unit_vector(b)) {
                chosen.push(b);
            }
        }
        let mut cols = ideal_basis.clone();
        cols.extend(chosen.iter().map(|&b| from.unit_vector(b)));
        let inv = Mat::from_cols(dim, &cols)
            .inverse()
            .ok_or_else(|| Error::Verification("quotient basis is singular".into()))?;
        let proj = inv.sub_matrix(ideal_basis.len(), chosen.len(), 0, dim);
        let pos = |v: usize| kept.iter().position(|&k| k == v).expect("kept vertex");
        let q = chosen.len();
        let sc = StructureConstants {
            vertex_labels: kept
                .iter()
                .map(|&v| from.quiver().vertices[v].clone())
                .collect(),
            blocks: chosen
                .iter()
                .map(|&b| {
                    (
                        pos(from.basis_element(b).src),
                        pos(from.basis_element(b).tgt),
                    )
                })
                .collect(),
            idempotents: (0..kept.len()).collect(),
            table: chosen
                .iter()
                .map(|&b| {
                    chosen
                        .iter()
                        .map(|&c| {
                            proj.mul_vec(&from.mul(&from.unit_vector(b), &from.unit_vector(c)))
                        })
                        .collect()
                })
                .collect(),
        };
        let (to, new_to_old, old_to_new) = if kept.is_empty() {
            (zero_algebra(), Vec::new(), Mat::zeros(0, 0))
        } else {
            let norm = algebra_from_structure_constants(&sc)?;
            (Arc::new(norm.algebra), norm.new_to_old, norm.old_to_new)
        };
        debug_assert_eq!(new_to_old.len(), q);
        Ok(IdemStep {
            from: from.clone(),
            to,
            removed: removed.to_vec(),
            kept,
            chosen,
            proj,
            new_to_old,
            old_to_new,
        })
    }

    /// Restriction of a module vanishing at the removed vertices.
    pub fn g(&self, x: &Representation) -> Result<Representation> {
        if self.removed.iter().any(|&v| x.dims()[v] != 0) {
            return Err(Error::NotInSubcategory(format!(
                "{:?} does not vanish at {:?}",
                x.dims(),
                self.removed
            )));
        }
        let dims: Vec<usize> = self.kept.iter().map(|&v| x.dims()[v]).collect();
        let maps = (0..self.to.n_arrows())
            .map(|a| {
                let ar = self.to.arrow(a);
                let old = &self.new_to_old[generator_element(&self.to, a)];
                let mut m = Mat::zeros(dims[ar.tgt], dims[ar.src]);
                for (k, c) in old.iter().enumerate() {
                    if !c.is_zero() {
                        m.add_scaled(&x.action(self.chosen[k]), c);
                    }
                }
                m
            })
            .collect();
        Representation::new(&self.to, dims, maps)
    }

    /// Inflation back to a module over the larger algebra.
    pub fn f(&self, y: &Representation) -> Result<Representation> {
        let n = self.from.n_vertices();
        let mut dims = vec![0; n];
        for (i, &v) in self.kept.iter().enumerate() {
            dims[v] = y.dims()[i];
        }
        let pos = |v: usize| self.kept.iter().position(|&k| k == v);
        let maps = (0..self.from.n_arrows())
            .map(|a| {
                let ar = self.from.arrow(a);
                match (pos(ar.src), pos(ar.tgt)) {
                    (Some(s), Some(t)) => {
                        let e = generator_element(&self.from, a);
                        let q = self.proj.mul_vec(&self.from.unit_vector(e));
                        let new = self.old_to_new.mul_vec(&q);
                        y.action_in_block(&new, s, t)
                    }
                    _ => Mat::zeros(dims[ar.tgt], dims[ar.src]),
                }
            })
            .collect();
        Representation::new(&self.from, dims, maps)
    }
}

/// Passage from `J(M) ⊆ mod A` to `mod Γ_M` with `Γ_M = End(B_M)^op / ⟨e_M⟩`.
#[derive(Debug)]
pub struct JassoStep {
    pub from: Arc<Algebra>,
    pub to: Arc<Algebra>,
    pub m_parts: Vec<Representation>,
    /// Summands of the Bongartz completion outside `add M`, one per vertex of `Γ`.
    pub b_rest: Vec<Representation>,
    m_sum: Representation,
    tau_m: Representation,
    /// Per structure-constant basis element in block `(i, j)`: a map `B_j → B_i`.
    phis: Vec<RepMorphism>,
    /// Torsion-free parts `f_M B_i`; their images under `G` are the projectives.
    pis: Vec<Representation>,
    /// The maps `f_M B_j → f_M B_i` induced by `phis`.
    hs: Vec<RepMorphism>,
    new_to_old: Vec<Vec<Scalar>>,
}

impl JassoStep {
    pub fn new(from: &Arc<Algebra>, m: &[Representation]) -> Result<Self> {
        let m_sum = Representation::sum(from, m);
        let m_parts = basic_summands(&m_sum)?;
        let b = bongartz(&m_sum)?;
        let b_rest: Vec<Representation> = b[m_parts.len()..].to_vec();
        let r = b_rest.len();
        let tau_m = tau(&m_sum)?;

        let mut phis = Vec::new();
        let mut blocks = Vec::new();
        let mut idempotents = vec![0; r];
        // per block: Hom space, solver over [chosen | through-M], global indices
        let mut reducers: HashMap<(usize, usize), (HomSpace, Mat, Vec<usize>)> = HashMap::new();
        for i in 0..r {
            for j in 0..r {
                let h = HomSpace::new(&b_rest[j], &b_rest[i])?;
                let mut through = Echelon::new(h.dim());
                for mk in &m_parts {
                    let gs = hom_basis(&b_rest[j], mk)?;
                    if gs.is_empty() {
                        continue;
                    }
                    for hh in hom_basis(mk, &b_rest[i])? {
                        for g in &gs {
                            through.insert(&h.coordinates(&hh.after(g)));
                        }
                    }
                }
                let through_basis = through.basis().to_vec();
                let mut span = through.clone();
                let mut chosen: Vec<Vec<Scalar>> = Vec::new();
                if i == j {
                    let id = h.coordinates(&RepMorphism::identity(&b_rest[i]));
                    if !span.insert(&id) {
                        return Err(Error::Verification("identity factors through add M".into()));
                    }
                    chosen.push(id);
                }
                for k in 0..h.dim() {
                    let u = unit(h.dim(), k);
                    if span.insert(&u) {
                        chosen.push(u);
                    }
                }
                let mut idx = Vec::new();
                for (ci, c) in chosen.iter().enumerate() {
                    if i == j && ci == 0 {
                        idempotents[i] = phis.len();
                    }
                    idx.push(phis.len());
                    phis.push(h.combine(c));
                    blocks.push((i, j));
                }
                let mut cols = chosen.clone();
                cols.extend(through_basis);
                let solver = Mat::from_cols(h.dim(), &cols);
                reducers.insert((i, j), (h, solver, idx));
            }
        }
        let dim = phis.len();
        let reduce = |i: usize, j: usize, f: &RepMorphism| -> Result<Vec<Scalar>> {
            let (h, solver, idx) = &reducers[&(i, j)];
            let mut out = vec![Scalar::zero(); dim];
            if idx.is_empty() {
                return Ok(out);
            }
            let sol = solve_vec(solver, &h.coordinates(f))
                .ok_or_else(|| Error::Verification("reduction failed".into()))?;
            for (k, &g) in idx.iter().enumerate() {
                out[g] = sol[k].clone();
            }
            Ok(out)
        };
        let mut table = vec![vec![vec![Scalar::zero(); dim]; dim]; dim];
        for bi in 0..dim {
            for ci in 0..dim {
                let (sb, tb) = blocks[bi];
                let (sc_, tc) = blocks[ci];
                if tc != sb {
                    continue;
                }
                // φ_{b·c} = φ_c ∘ φ_b : B_{tb} → B_{sc}
                table[bi][ci] = reduce(sc_, tb, &phis[ci].after(&phis[bi]))?;
            }
        }
        let sc = StructureConstants {
            vertex_labels: (0..r).map(|i| format!("{}", i + 1)).collect(),
            blocks: blocks.clone(),
            idempotents,
            table,
        };
        let (to, new_to_old) = if r == 0 {
            (zero_algebra(), Vec::new())
        } else {
            let norm = algebra_from_structure_constants(&sc)?;
            (Arc::new(norm.algebra), norm.new_to_old)
        };

        let mut pis = Vec::with_capacity(r);
        let mut projections = Vec::with_capacity(r);
        for bi in &b_rest {
            let t = torsion_parts(&m_sum, bi)?;
            pis.push(t.f);
            projections.push(t.f_projection);
        }
        let mut hs = Vec::with_capacity(dim);
        for (k, &(i, j)) in blocks.iter().enumerate() {
            // h ∘ π_j = π_i ∘ φ_k
            let rhs = projections[i].after(&phis[k]);
            let mut maps = Vec::new();
            for v in 0..from.n_vertices() {
                let pj = &projections[j].maps[v];
                let h = if pj.rows() == 0 {
                    Mat::zeros(pis[i].dims()[v], 0)
                } else {
                    solve(&pj.transpose(), &rhs.maps[v].transpose())?
                        .ok_or_else(|| {
                            Error::LiftFailed("map does not descend to torsion-free parts".into())
                        })?
                        .transpose()
                };
                maps.push(h);
            }
            hs.push(RepMorphism { maps });
        }
        Ok(JassoStep {
            from: from.clone(),
            to,
            m_parts,
            b_rest,
            m_sum,
            tau_m,
            phis,
            pis,
            hs,
            new_to_old,
        })
    }

    pub fn m_sum(&self) -> &Representation {
        &self.m_sum
    }

    pub fn contains(&self, x: &Representation) -> bool {
        hom_dim(&self.m_sum, x) == 0 && hom_dim(x, &self.tau_m) == 0
    }

    /// `X ↦ Hom(B, X)` with `Γ` acting by precomposition.
    pub fn g(&self, x: &Representation) -> Result<Representation> {
        if !self.contains(x) {
            return Err(Error::NotInSubcategory(format!(
                "{:?} is not in J(M)",
                x.dims()
            )));
        }
        let spaces: Vec<HomSpace> = self
            .b_rest
            .iter()
            .map(|b| HomSpace::new(b, x))
            .collect::<Result<_>>()?;
        let dims: Vec<usize> = spaces.iter().map(HomSpace::dim).collect();
        let maps = (0..self.to.n_arrows())
            .map(|a| {
                let ar = self.to.arrow(a);
                let old = &self.new_to_old[generator_element(&self.to, a)];
                let cols: Vec<Vec<Scalar>> = spaces[ar.src]
                    .basis
                    .iter()
                    .map(|f| {
                        let mut g = RepMorphism::zero(&self.b_rest[ar.tgt], x);
                        for (k, c) in old.iter().enumerate() {
                            if !c.is_zero() {
                                g = g.add(&f.after(&self.phis[k]).scale(c));
                            }
                        }
                        spaces[ar.tgt].coordinates(&g)
                    })
                    .collect();
                Mat::from_cols(dims[ar.tgt], &cols)
            })
            .collect();
        Representation::new(&self.to, dims, maps)
    }

    /// Quasi-inverse of `g`: lifts a minimal presentation and takes the cokernel.
    pub fn f(&self, y: &Representation) -> Result<Representation> {
        if y.is_zero() {
            return Ok(Representation::zero(&self.from));
        }
        let pres = min_presentation(y)?;
        let d1 = &pres.d1;
        let src_parts: Vec<Representation> = d1.src.iter().map(|&i| self.pis[i].clone()).collect();
        let tgt_parts: Vec<Representation> = d1.tgt.iter().map(|&i| self.pis[i].clone()).collect();
        let (src, _, _) = Representation::direct_sum(&self.from, &src_parts);
        let (tgt, _, _) = Representation::direct_sum(&self.from, &tgt_parts);
        let nv = self.from.n_vertices();
        let mut maps: Vec<Mat> = (0..nv)
            .map(|v| Mat::zeros(tgt.dims()[v], src.dims()[v]))
            .collect();
        for v in 0..nv {
            let mut r0 = 0;
            for (l, tp) in tgt_parts.iter().enumerate() {
                let mut c0 = 0;
                for (k, sp) in src_parts.iter().enumerate() {
                    let c = d1.entry(l, k);
                    let mut block = Mat::zeros(tp.dims()[v], sp.dims()[v]);
                    for (b, cb) in c.iter().enumerate() {
                        if cb.is_zero() {
                            continue;
                        }
                        for (kk, ok) in self.new_to_old[b].iter().enumerate() {
                            if !ok.is_zero() {
                                block.add_scaled(&self.hs[kk].maps[v], &(cb * ok));
                            }
                        }
                    }
                    maps[v].set_block(r0, c0, &block);
                    c0 += sp.dims()[v];
                }
                r0 += tp.dims()[v];
            }
        }
        Ok(RepMorphism { maps }.cokernel(&tgt)?.0)
    }
}

/// One passage between consecutive levels.
#[derive(Debug)]
pub enum Step {
    Idem(IdemStep),
    Jasso(JassoStep),
    /// `J(U) = 0` for `U` support τ-tilting.
    Zero(Arc<Algebra>),
}

impl Step {
    pub fn to(&self) -> Arc<Algebra> {
        match self {
            Step::Idem(s) => s.to.clone(),
            Step::Jasso(s) => s.to.clone(),
            Step::Zero(_) => zero_algebra(),
        }
    }

    pub fn g(&self, x: &Representation) -> Result<Representation> {
        match self {
            Step::Idem(s) => s.g(x),
            Step::Jasso(s) => s.g(x),
            Step::Zero(_) if x.is_zero() => Ok(Representation::zero(&self.to())),
            Step::Zero(_) => Err(Error::NotInSubcategory(format!(
                "{:?} is nonzero",
                x.dims()
            ))),
        }
    }

    pub fn f(&self, y: &Representation) -> Result<Representation> {
        match self {
            Step::Idem(s) => s.f(y),
            Step::Jasso(s) => s.f(y),
            Step::Zero(from) => Ok(Representation::zero(from)),
        }
    }
}

/// The reduction of `mod A` by a support τ-rigid `U = (M, P)`: first `P[1]`, then `M`.
#[derive(Debug)]
pub struct Reduction {
    pub u: SupportTauRigidObject,
    pub steps: Vec<Arc<Step>>,
    pub gamma: Arc<Algebra>,
}

impl Reduction {
    pub fn new(alg: &Arc<Algebra>, u: &SupportTauRigidObject) -> Result<Self> {
        let n = alg.n_vertices();
        if u.size() == n {
            return Ok(Reduction {
                u: u.clone(),
                steps: vec![Arc::new(Step::Zero(alg.clone()))],
                gamma: zero_algebra(),
            });
        }
        let mut steps = Vec::new();
        let mut cur = alg.clone();
        let mut m = u.m.clone();
        if !u.p.is_empty() {
            let st = IdemStep::new(alg, &u.p)?;
            m = m.iter().map(|x| st.g(x)).collect::<Result<_>>()?;
            cur = st.to.clone();
            steps.push(Arc::new(Step::Idem(st)));
        }
        if !m.is_empty() {
            let st = JassoStep::new(&cur, &m)?;
            cur = st.to.clone();
            steps.push(Arc::new(Step::Jasso(st)));
        }
        Ok(Reduction {
            u: u.clone(),
            steps,
            gamma: cur,
        })
    }

    pub fn g(&self, x: &Representation) -> Result<Representation> {
        self.steps.iter().try_fold(x.clone(), |acc, s| s.g(&acc))
    }

    pub fn f(&self, y: &Representation) -> Result<Representation> {
        self.steps
            .iter()
            .rev()
            .try_fold(y.clone(), |acc, s| s.f(&acc))
    }

    /// `ε_U(V)` as an object of `C(Γ_U)`; `U ⊕ V` must be support τ-rigid.
    pub fn epsilon(&self, v: &SignedObject) -> Result<SignedObject> {
        let mut cur = v.clone();
        for s in &self.steps {
            cur = match s.as_ref() {
                Step::Zero(_) => {
                    return Err(Error::NotJointlyRigid(format!(
                        "{} has no room beside a support τ-tilting object",
                        v.label()
                    )))
                }
                Step::Idem(st) => {
                    if cur.shifted {
                        let q = projective_vertex(&cur.module)
                            .ok_or_else(|| Error::NotProjective(cur.label()))?;
                        let i = st
                            .kept
                            .iter()
                            .position(|&k| k == q)
                            .ok_or_else(|| Error::NotJointlyRigid(cur.label()))?;
                        SignedObject::shifted_projective(&st.to, i)
                    } else {
                        SignedObject::module(
                            st.g(&cur.module)
                                .map_err(|_| Error::NotJointlyRigid(cur.label()))?,
                        )
                    }
                }
                Step::Jasso(st) => jasso_epsilon(st, &cur)?,
            };
        }
        Ok(cur)
    }
}

fn jasso_epsilon(st: &JassoStep, v: &SignedObject) -> Result<SignedObject> {
    if !v.shifted && !gen_membership(&st.m_sum, &v.module)? {
        let f = torsion_parts(&st.m_sum, &v.module)?.f;
        return Ok(SignedObject::module(st.g(&f)?));
    }
    let b = b_m_v(&st.m_sum, v)?;
    let i = st
        .b_rest
        .iter()
        .position(|x| is_isomorphic(x, &b))
        .ok_or_else(|| {
            Error::Verification(format!(
                "B_M^V of dims {:?} is not a Bongartz summand",
                b.dims()
            ))
        })?;
    Ok(SignedObject::shifted_projective(&st.to, i))
}

/// `X ∈ J(U)`: `Hom(M, X) = 0`, `Hom(X, τM) = 0` and `Hom(P, X) = 0`.
pub fn j_membership(u: &SupportTauRigidObject, x: &Representation) -> Result<bool> {
    if x.is_zero() {
        return Ok(true);
    }
    if u.p.iter().any(|&v| x.dims()[v] != 0) {
        return Ok(false);
    }
    for m in &u.m {
        if hom_dim(m, x) != 0 || hom_dim(x, &tau(m)?) != 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Isomorphism classes of modules seen so far.
#[derive(Clone, Debug, Default)]
pub struct IsoRegistry {
    reps: Vec<Representation>,
}

impl IsoRegistry {
    pub fn id(&mut self, m: &Representation) -> usize {
        if let Some(i) = self
            .reps
            .iter()
            .position(|r| r.dims() == m.dims() && is_isomorphic(r, m))
        {
            return i;
        }
        self.reps.push(m.clone());
        self.reps.len() - 1
    }

    pub fn get(&self, i: usize) -> &Representation {
        &self.reps[i]
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }
}

/// Sorted registry ids of the simple objects of a wide subcategory.
pub type Key = Vec<usize>;

/// A wide subcategory presented as `mod Γ` with the passages from the ambient algebra.
#[derive(Clone, Debug)]
pub struct Level {
    pub alg: Arc<Algebra>,
    pub steps: Vec<Arc<Step>>,
    pub catalog: TauCatalog,
}

impl Level {
    pub fn from_ambient(&self, x: &Representation) -> Result<Representation> {
        self.steps.iter().try_fold(x.clone(), |acc, s| s.g(&acc))
    }

    pub fn to_ambient(&self, y: &Representation) -> Result<Representation> {
        self.steps
            .iter()
            .rev()
            .try_fold(y.clone(), |acc, s| s.f(&acc))
    }

    /// Simple objects in ambient form, by vertex of `Γ`.
    pub fn simples(&self) -> Result<Vec<Representation>> {
        (0..self.alg.n_vertices())
            .map(|i| self.to_ambient(&Representation::simple(&self.alg, i)))
            .collect()
    }

    /// A catalog object in ambient form; shifted entries carry the projective of the subcategory.
    pub fn ambient_object(&self, idx: usize) -> Result<SignedObject> {
        let o = &self.catalog.objects[idx];
        Ok(SignedObject {
            module: self.to_ambient(&o.module)?,
            shifted: o.shifted,
        })
    }

    /// Catalog index of an ambient signed object lying in this subcategory.
    pub fn locate(&self, o: &SignedObject) -> Result<usize> {
        let y = self.from_ambient(&o.module)?;
        let local = if o.shifted {
            let v = projective_vertex(&y).ok_or_else(|| Error::NotProjective(o.label()))?;
            SignedObject::shifted_projective(&self.alg, v)
        } else {
            SignedObject::module(y)
        };
        self.catalog
            .index_of(&local)
            .ok_or_else(|| Error::NotInSubcategory(format!("{} is not in the catalog", o.label())))
    }
}

/// `J_W(U)` for `W` a level and `U` a clique of its catalog.
#[derive(Debug)]
pub struct Perp {
    pub parent: usize,
    pub u: Vec<usize>,
    pub child: usize,
    pub reduction: Reduction,
    /// `(V, ε_U(V))` as catalog indices of the parent and child levels.
    pub eps: Vec<(usize, usize)>,
}

/// Memoized tree of τ-perpendicular subcategories below an ambient algebra.
#[derive(Debug)]
pub struct WideEngine {
    levels: Vec<Level>,
    perps: HashMap<(usize, Vec<usize>), Perp>,
    pub registry: IsoRegistry,
    keys: HashMap<usize, Key>,
}

impl WideEngine {
    pub fn new(alg: &Arc<Algebra>) -> Result<Self> {
        WideEngine::with_modules(alg, &indec_tau_rigid(alg)?)
    }

    /// Uses the given indecomposable τ-rigid modules as the ambient catalog.
    pub fn with_modules(alg: &Arc<Algebra>, modules: &[Representation]) -> Result<Self> {
        let catalog = TauCatalog::new(alg, modules)?;
        let top = Level {
            alg: alg.clone(),
            steps: Vec::new(),
            catalog,
        };
        Ok(WideEngine {
            levels: vec![top],
            perps: HashMap::new(),
            registry: IsoRegistry::default(),
            keys: HashMap::new(),
        })
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.levels[0].alg
    }

    pub fn level(&self, i: usize) -> &Level {
        &self.levels[i]
    }

    pub fn n_levels(&self) -> usize {
        self.levels.len()
    }

    /// `J_W(U)`; `u` lists catalog indices of the level `W`.
    pub fn perp(&mut self, level: usize, u: &[usize]) -> Result<&Perp> {
        let mut key: Vec<usize> = u.to_vec();
        key.sort_unstable();
        key.dedup();
        if !self.perps.contains_key(&(level, key.clone())) {
            let p = self.build_perp(level, &key)?;
            self.perps.insert((level, key.clone()), p);
        }
        Ok(&self.perps[&(level, key)])
    }

    fn build_perp(&mut self, level: usize, u: &[usize]) -> Result<Perp> {
        let parent = &self.levels[level];
        let cat = &parent.catalog;
        for (a, &i) in u.iter().enumerate() {
            for &j in &u[a + 1..] {
                if !cat.compat[i][j] {
                    return Err(Error::NotJointlyRigid(format!(
                        "{} and {}",
                        cat.objects[i].label(),
                        cat.objects[j].label()
                    )));
                }
            }
        }
        let obj = cat.to_object(u);
        let reduction = Reduction::new(&parent.alg, &obj)?;
        let mut images: Vec<(usize, SignedObject)> = Vec::new();
        for v in 0..cat.objects.len() {
            if u.contains(&v) || !u.iter().all(|&i| cat.compat[i][v]) {
                continue;
            }
            images.push((v, reduction.epsilon(&cat.objects[v])?));
        }
        let mut modules: Vec<Representation> = images
            .iter()
            .filter(|(_, o)| !o.shifted)
            .map(|(_, o)| o.module.clone())
            .collect();
        modules.sort_by(|a, b| a.dims().cmp(b.dims()));
        let catalog = TauCatalog::new(&reduction.gamma, &modules)?;
        let mut eps = Vec::with_capacity(images.len());
        let mut hit = vec![false; catalog.objects.len()];
        for (v, o) in &images {
            let idx = if o.shifted {
                let q =
                    projective_vertex(&o.module).ok_or_else(|| Error::NotProjective(o.label()))?;
                modules.len() + q
            } else {
                catalog.index_of(o).expect("image was added to the catalog")
            };
            if hit[idx] {
                return Err(Error::Verification(format!(
                    "ε is not injective at {}",
                    o.label()
                )));
            }
            hit[idx] = true;
            eps.push((*v, idx));
        }
        if hit.iter().any(|h| !h) {
            return Err(Error::Verification("ε misses a shifted projective".into()));
        }
        let mut steps = parent.steps.clone();
        steps.extend(reduction.steps.iter().cloned());
        let child = Level {
            alg: reduction.gamma.clone(),
            steps,
            catalog,
        };
        self.levels.push(child);
        Ok(Perp {
            parent: level,
            u: u.to_vec(),
            child: self.levels.len() - 1,
            reduction,
            eps,
        })
    }

    /// Child level index of `J_W(U)`.
    pub fn child(&mut self, level: usize, u: &[usize]) -> Result<usize> {
        Ok(self.perp(level, u)?.child)
    }

    pub fn epsilon(&mut self, level: usize, u: &[usize], v: usize) -> Result<usize> {
        let p = self.perp(level, u)?;
        p.eps
            .iter()
            .find(|(a, _)| *a == v)
            .map(|(_, b)| *b)
            .ok_or_else(|| {
                Error::NotJointlyRigid(format!("object {v} is not compatible with {u:?}"))
            })
    }

    pub fn epsilon_inverse(&mut self, level: usize, u: &[usize], w: usize) -> Result<usize> {
        let p = self.perp(level, u)?;
        let pre: Vec<usize> = p
            .eps
            .iter()
            .filter(|(_, b)| *b == w)
            .map(|(a, _)| *a)
            .collect();
        match pre.as_slice() {
            [a] => Ok(*a),
            [] => Err(Error::NoPreimage(format!("object {w} of J({u:?})"))),
            _ => Err(Error::NonUniquePreimage(format!(
                "object {w} of J({u:?}) has preimages {pre:?}"
            ))),
        }
    }

    pub fn simples(&self, level: usize) -> Result<Vec<Representation>> {
        self.levels[level].simples()
    }

    pub fn key(&mut self, level: usize) -> Result<Key> {
        if let Some(k) = self.keys.get(&level) {
            return Ok(k.clone());
        }
        let mut k: Key = self
            .simples(level)?
            .iter()
            .map(|s| self.registry.id(s))
            .collect();
        k.sort_unstable();
        self.keys.insert(level, k.clone());
        Ok(k)
    }

    /// Catalog index in `to` of object `idx` of level `from`, matched through ambient forms.
    pub fn transport(&self, from: usize, idx: usize, to: usize) -> Result<usize> {
        if from == to {
            return Ok(idx);
        }
        self.levels[to].locate(&self.levels[from].ambient_object(idx)?)
    }

    /// Simple objects of `J(U)` for an ambient support τ-rigid object, with its key.
    pub fn simples_and_key(
        &mut self,
        u: &SupportTauRigidObject,
    ) -> Result<(Vec<Representation>, Key)> {
        let idx = self.levels[0].catalog.indices(u)?;
        let c = self.child(0, &idx)?;
        Ok((self.simples(c)?, self.key(c)?))
    }

    /// `W_L(T)` for the torsion class of a support τ-tilting pair: `J(M_ns ⊕ P[1])`.
    pub fn w_left(&mut self, t: &SupportTauRigidObject) -> Result<usize> {
        let (_, ns) = split_projective_split(&t.m)?;
        let u = SupportTauRigidObject {
            m: ns.iter().map(|&i| t.m[i].clone()).collect(),
            p: t.p.clone(),
        };
        let idx = self.levels[0].catalog.indices(&u)?;
        self.child(0, &idx)
    }
}

/// `J(U)` as a standalone wide subcategory of the ambient category.
#[derive(Debug)]
pub struct WideSubcategory {
    pub u: SupportTauRigidObject,
    pub reduction: Reduction,
}

impl WideSubcategory {
    pub fn gamma(&self) -> &Arc<Algebra> {
        &self.reduction.gamma
    }

    pub fn contains(&self, x: &Representation) -> Result<bool> {
        j_membership(&self.u, x)
    }

    pub fn g(&self, x: &Representation) -> Result<Representation> {
        self.reduction.g(x)
    }

    /// Quasi-inverse of `g`, certified by `g(f(Y)) ≅ Y`.
    pub fn f_inverse(&self, y: &Representation) -> Result<Representation> {
        let x = self.reduction.f(y)?;
        let back = self.reduction.g(&x)?;
        if !is_isomorphic(&back, y) {
            return Err(Error::LiftFailed(format!(
                "round trip of {:?} gives {:?}",
                y.dims(),
                back.dims()
            )));
        }
        Ok(x)
    }

    pub fn simples(&self) -> Result<Vec<Representation>> {
        (0..self.gamma().n_vertices())
            .map(|i| self.f_inverse(&Representation::simple(self.gamma(), i)))
            .collect()
    }

    /// Projective dimension of an object of the subcategory, computed in `mod Γ`.
    pub fn pd(&self, x: &Representation, cap: usize) -> Result<Pd> {
        pd_capped(&self.g(x)?, cap)
    }

    pub fn ext_dim(&self, n: usize, x: &Representation, y: &Representation) -> Result<usize> {
        ext_dim(n, &self.g(x)?, &self.g(y)?)
    }

    pub fn epsilon(&self, v: &SignedObject) -> Result<SignedObject> {
        let objs = self.u.summands(
            &self
                .reduction
                .steps
                .first()
                .map(|s| match s.as_ref() {
                    Step::Idem(st) => st.from.clone(),
                    Step::Jasso(st) => st.from.clone(),
                    Step::Zero(a) => a.clone(),
                })
                .expect("a nontrivial reduction"),
        );
        for o in &objs {
            if !crate::tau::compatible(o, v)? || o.iso(v) {
                return Err(Error::NotJointlyRigid(format!(
                    "{} and {}",
                    o.label(),
                    v.label()
                )));
            }
        }
        self.reduction.epsilon(v)
    }
}

pub fn jasso_reduction(alg: &Arc<Algebra>, u: &SupportTauRigidObject) -> Result<WideSubcategory> {
    u.verify(alg)?;
    Ok(WideSubcategory {
        u: u.clone(),
        reduction: Reduction::new(alg, u)?,
    })
}

/// Summary of `Γ_U` for export.
#[derive(Clone, Debug, Serialize)]
pub struct GammaReport {
    pub dim: usize,
    pub vertices: usize,
    pub local: bool,
    pub commutative: bool,
    pub simple_dims: Vec<Vec<usize>>,
}

pub fn gamma_report(w: &WideSubcategory) -> Result<GammaReport> {
    let g = w.gamma();
    Ok(GammaReport {
        dim: g.dim(),
        vertices: g.n_vertices(),
        local: g.n_vertices() == 1,
        commutative: g.is_commutative(),
        simple_dims: w.simples()?.iter().map(|s| s.dims().to_vec()).collect(),
    })
}

/// Searches for an isomorphism between one-vertex algebras by sending the loop
/// generators of `r` to small integer combinations of the generators of `g`.
/// Returns the images of the generators of `r` as coordinate vectors of `g`.
pub fn local_algebra_isomorphism(r: &Algebra, g: &Algebra) -> Option<Vec<Vec<Scalar>>> {
    if r.n_vertices() != 1
        || g.n_vertices() != 1
        || r.dim() != g.dim()
        || r.n_arrows() != g.n_arrows()
    {
        return None;
    }
    let k = g.n_arrows();
    let gens: Vec<Vec<Scalar>> = (0..k)
        .map(|a| g.unit_vector(generator_element(g, a)))
        .collect();
    let combos: Vec<Vec<Scalar>> = (0..k)
        .map(|_| (-2i64..=2).collect_vec())
        .multi_cartesian_product()
        .filter(|c| c.iter().any(|&x| x != 0))
        .map(|c| {
            let mut v = vec![Scalar::zero(); g.dim()];
            for (ci, gv) in c.iter().zip(&gens) {
                for (o, x) in v.iter_mut().zip(gv) {
                    *o += &(Scalar::from(*ci) * x);
                }
            }
            v
        })
        .collect();
    for images in (0..r.n_arrows())
        .map(|_| combos.iter())
        .multi_cartesian_product()
    {
        // image of every basis word of r
        let word_image = |word: &[usize]| -> Vec<Scalar> {
            word.iter().fold(g.unit_vector(g.idempotent(0)), |acc, &a| {
                g.mul(images[a], &acc)
            })
        };
        let ok_rel = r.relations().iter().all(|rel| {
            let mut s = vec![Scalar::zero(); g.dim()];
            for t in &rel.terms {
                for (o, x) in s.iter_mut().zip(word_image(&t.path)) {
                    *o += &(&t.coeff * &x);
                }
            }
            s.iter().all(Scalar::is_zero)
        });
        if !ok_rel {
            continue;
        }
        let cols: Vec<Vec<Scalar>> = r.basis().iter().map(|b| word_image(&b.word)).collect();
        if Mat::from_cols(g.dim(), &cols).is_invertible() {
            return Some(images.into_iter().cloned().collect());
        }
    }
    None
}

/// Keys of left finite wide subcategories of `mod A^op`, moved to `mod A` by duality.
pub fn w_right_keys(engine: &mut WideEngine, op_engine: &mut WideEngine) -> Result<Vec<Key>> {
    let alg = engine.algebra().clone();
    debug_assert!(Arc::ptr_eq(&opposite_arc(op_engine.algebra()), &alg));
    let mut keys = Vec::new();
    for t in op_engine.level(0).catalog.support_tau_tilting() {
        let lvl = op_engine.w_left(&t)?;
        let mut k: Key = op_engine
            .simples(lvl)?
            .iter()
            .map(|s| s.dual(&alg).map(|d| engine.registry.id(&d)))
            .collect::<Result<_>>()?;
        k.sort_unstable();
        keys.push(k);
    }
    keys.sort();
    keys.dedup();
    Ok(keys)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::homology::ProjMap;
    use crate::rep::{induction, is_indecomposable};
    use crate::tau::TauCatalog;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn arc(a: Algebra) -> Arc<Algebra> {
        Arc::new(a)
    }

    fn module(m: &Representation) -> SupportTauRigidObject {
        SupportTauRigidObject {
            m: vec![m.clone()],
            p: vec![],
        }
    }

    #[test]
    fn zero_algebra_has_no_vertices() {
        let z = zero_algebra();
        assert_eq!((z.n_vertices(), z.dim()), (0, 0));
        assert!(Representation::zero(&z).is_zero());
    }

    #[test]
    fn membership_examples() {
        let a = arc(fixtures::a2());
        let s1 = Representation::simple(&a, 0);
        let p1 = Representation::projective(&a, 0);
        let p2 = Representation::projective(&a, 1);
        let u = module(&s1);
        assert!(j_membership(&u, &Representation::zero(&a)).unwrap());
        assert!(j_membership(&u, &p1).unwrap());
        assert!(!j_membership(&u, &p2).unwrap());
    }

    #[test]
    fn membership_commutes_with_induction() {
        let lam = arc(fixtures::example7());
        let base = lam.provenance().unwrap().base.clone();
        let mods = crate::tau::indec_tau_rigid(&base).unwrap();
        let mut all = mods.clone();
        all.push(Representation::simple(&base, 0));
        all.push(Representation::simple(&base, 1));
        for x in &mods {
            for y in &all {
                let down = j_membership(&module(x), y).unwrap();
                let up = j_membership(
                    &module(&induction(&lam, x).unwrap()),
                    &induction(&lam, y).unwrap(),
                )
                .unwrap();
                assert_eq!(down, up);
            }
        }
    }

    #[test]
    fn idempotent_step_round_trip() {
        let a = arc(fixtures::a3());
        let st = IdemStep::new(&a, &[1]).unwrap();
        assert_eq!(st.to.n_vertices(), 2);
        assert_eq!(st.to.dim(), 2);
        for v in [0, 2] {
            let s = Representation::simple(&a, v);
            let y = st.g(&s).unwrap();
            assert!(is_isomorphic(&st.f(&y).unwrap(), &s));
        }
        assert!(st.g(&Representation::projective(&a, 0)).is_err());
    }

    #[test]
    fn f_inverse_examples() {
        let a = arc(fixtures::a2());
        let s1 = Representation::simple(&a, 0);
        let w = jasso_reduction(&a, &module(&s1)).unwrap();
        let simples = w.simples().unwrap();
        assert_eq!(simples.len(), 1);
        assert!(is_isomorphic(
            &simples[0],
            &Representation::projective(&a, 0)
        ));
        let whole = jasso_reduction(
            &a,
            &SupportTauRigidObject {
                m: vec![],
                p: vec![],
            },
        )
        .unwrap();
        assert_eq!(whole.gamma().dim(), a.dim());
        let s = whole.simples().unwrap();
        assert!(is_isomorphic(&s[0], &s1) && is_isomorphic(&s[1], &Representation::simple(&a, 1)));
    }

    #[test]
    fn gamma_for_example_seven() {
        let lam = arc(fixtures::example7());
        let r = lam.provenance().unwrap().local.clone();
        for m in crate::tau::indec_tau_rigid(&lam).unwrap() {
            let w = jasso_reduction(&lam, &module(&m)).unwrap();
            let rep = gamma_report(&w).unwrap();
            assert_eq!((rep.dim, rep.local, rep.commutative), (4, true, true));
            assert!(local_algebra_isomorphism(&r, w.gamma()).is_some());
            assert_eq!(rep.simple_dims.len(), 1);
        }
        let i1 = Representation::injective(&lam, 0);
        let w = jasso_reduction(&lam, &module(&i1)).unwrap();
        assert_eq!(gamma_report(&w).unwrap().simple_dims, vec![vec![1, 1]]);
    }

    #[test]
    fn f_inverse_round_trips_on_random_modules() {
        let lam = arc(fixtures::example7());
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut count = 0;
        for m in crate::tau::indec_tau_rigid(&lam).unwrap() {
            let w = jasso_reduction(&lam, &module(&m)).unwrap();
            let g = w.gamma().clone();
            for _ in 0..7 {
                let k = rng.gen_range(1..=2);
                let src = vec![0; k];
                let coords: Vec<Scalar> = (0..ProjMap::hom_dim(&g, &src, &[0]))
                    .map(|_| Scalar::from(rng.gen_range(-2i64..=2)))
                    .collect();
                let d = ProjMap::from_coords(&g, &src, &[0], &coords);
                let y = d
                    .to_morphism()
                    .cokernel(&crate::homology::proj_sum(&g, &[0]))
                    .unwrap()
                    .0;
                let x = w.f_inverse(&y).unwrap();
                assert!(w.contains(&x).unwrap());
                count += 1;
            }
        }
        assert!(count >= 20);
    }

    #[test]
    fn simple_counts_and_epsilon_bijection() {
        for alg in [
            arc(fixtures::a2()),
            arc(fixtures::a3()),
            arc(fixtures::example7()),
        ] {
            let n = alg.n_vertices();
            let mut e = WideEngine::new(&alg).unwrap();
            let cliques = e.level(0).catalog.cliques(n);
            for c in cliques {
                let child = e.child(0, &c).unwrap();
                assert_eq!(e.level(child).alg.n_vertices(), n - c.len());
                assert_eq!(e.simples(child).unwrap().len(), n - c.len());
                for s in e.simples(child).unwrap() {
                    assert!(is_indecomposable(&s).unwrap().absolutely());
                }
            }
        }
    }

    #[test]
    fn epsilon_examples() {
        let a = arc(fixtures::a2());
        let p1 = Representation::projective(&a, 0);
        let p2 = Representation::projective(&a, 1);
        let w = jasso_reduction(&a, &module(&p2)).unwrap();
        let e = w.epsilon(&SignedObject::module(p1.clone())).unwrap();
        assert!(!e.shifted);
        assert!(is_isomorphic(
            &w.f_inverse(&e.module).unwrap(),
            &Representation::simple(&a, 0)
        ));
        let w = jasso_reduction(
            &a,
            &SupportTauRigidObject {
                m: vec![],
                p: vec![1],
            },
        )
        .unwrap();
        let e = w
            .epsilon(&SignedObject::module(Representation::simple(&a, 0)))
            .unwrap();
        assert!(is_isomorphic(
            &w.f_inverse(&e.module).unwrap(),
            &Representation::simple(&a, 0)
        ));
        assert!(w.epsilon(&SignedObject::module(p1)).is_err());
    }

    #[test]
    fn epsilon_round_trip_and_composition_law() {
        let a = arc(fixtures::a2());
        let mut e = WideEngine::new(&a).unwrap();
        let n_obj = e.level(0).catalog.objects.len();
        assert!(e.perp(0, &[]).unwrap().eps.iter().all(|(x, y)| x == y));
        for u in 0..n_obj {
            let child = e.child(0, &[u]).unwrap();
            let pairs = e.perp(0, &[u]).unwrap().eps.clone();
            for &(v, w) in &pairs {
                assert_eq!(e.epsilon_inverse(0, &[u], w).unwrap(), v);
                // ε_{U⊕V} = ε^{J(U)}_{ε_U(V)} ∘ ε_U on every third object
                let direct = e.perp(0, &[u, v]).unwrap().eps.clone();
                for &(x, y) in &direct {
                    let ex = pairs.iter().find(|p| p.0 == x).unwrap().1;
                    let two = e.epsilon(child, &[w], ex).unwrap();
                    let c1 = e.child(0, &[u, v]).unwrap();
                    let c2 = e.child(child, &[w]).unwrap();
                    let moved = e.transport(c2, two, c1).unwrap();
                    assert_eq!(moved, y);
                }
            }
        }
    }

    #[test]
    fn epsilon_commutes_with_induction() {
        let lam = arc(fixtures::example7());
        let base = lam.provenance().unwrap().base.clone();
        let cat = TauCatalog::for_algebra(&base).unwrap();
        let ind = |o: &SignedObject| SignedObject {
            module: induction(&lam, &o.module).unwrap(),
            shifted: o.shifted,
        };
        for i in 0..cat.objects.len() {
            for j in 0..cat.objects.len() {
                if i == j || !cat.compat[i][j] {
                    continue;
                }
                let u = cat.to_object(&[i]);
                let down = jasso_reduction(&base, &u).unwrap();
                let e = down.epsilon(&cat.objects[j]).unwrap();
                let amb = SignedObject {
                    module: down.f_inverse(&e.module).unwrap(),
                    shifted: e.shifted,
                };
                let up_u = SupportTauRigidObject::from_summands(&[ind(&cat.objects[i])]).unwrap();
                let up = jasso_reduction(&lam, &up_u).unwrap();
                let ue = up.epsilon(&ind(&cat.objects[j])).unwrap();
                assert_eq!(ue.shifted, e.shifted);
                let ua = up.f_inverse(&ue.module).unwrap();
                assert!(is_isomorphic(&ua, &induction(&lam, &amb.module).unwrap()));
            }
        }
    }

    #[test]
    fn two_descriptions_of_pair_perps_agree() {
        let lam = arc(fixtures::example7());
        let mut e = WideEngine::new(&lam).unwrap();
        let cat = e.level(0).catalog.clone();
        for c in cat.cliques(2) {
            let u = cat.to_object(&c);
            if u.m.len() != 1 || u.p.len() != 1 {
                continue;
            }
            let c0 = e.child(0, &c).unwrap();
            let k1 = e.key(c0).unwrap();
            let p_mod = cat
                .index_of(&SignedObject::module(Representation::projective(
                    &lam, u.p[0],
                )))
                .unwrap();
            let jp = e.child(0, &[p_mod]).unwrap();
            let m_in = e
                .level(jp)
                .locate(&SignedObject::module(u.m[0].clone()))
                .unwrap();
            let pre = e.epsilon_inverse(0, &[p_mod], m_in).unwrap();
            let c2 = e.child(0, &[p_mod, pre]).unwrap();
            let k2 = e.key(c2).unwrap();
            assert_eq!(k1, k2);
        }
    }

    #[test]
    fn w_left_examples() {
        let a = arc(fixtures::a2());
        let mut e = WideEngine::new(&a).unwrap();
        let p1 = Representation::projective(&a, 0);
        let p2 = Representation::projective(&a, 1);
        let s1 = Representation::simple(&a, 0);
        let whole = e
            .w_left(&SupportTauRigidObject {
                m: vec![p1.clone(), p2],
                p: vec![],
            })
            .unwrap();
        assert_eq!(e.key(whole).unwrap(), e.key(0).unwrap());
        let l = e
            .w_left(&SupportTauRigidObject {
                m: vec![p1.clone(), s1.clone()],
                p: vec![],
            })
            .unwrap();
        let simples = e.simples(l).unwrap();
        assert_eq!(simples.len(), 1);
        assert!(is_isomorphic(&simples[0], &p1));
    }

    #[test]
    fn pd_inside_wide_subcategory() {
        let a = arc(fixtures::a3_rad2());
        let s1 = Representation::simple(&a, 0);
        let s3 = Representation::simple(&a, 2);
        assert_eq!(pd_capped(&s1, 8).unwrap(), Pd::Finite(2));
        let j_p3 = jasso_reduction(&a, &module(&Representation::projective(&a, 2))).unwrap();
        assert_eq!(j_p3.pd(&s1, 8).unwrap(), Pd::Finite(1));
        assert_ne!(ext_dim(2, &s1, &s3).unwrap(), 0);
        let j_p2 = jasso_reduction(&a, &module(&Representation::projective(&a, 1))).unwrap();
        assert!(j_p2.contains(&s1).unwrap() && j_p2.contains(&s3).unwrap());
        assert_eq!(j_p2.ext_dim(2, &s1, &s3).unwrap(), 0);
    }
}
