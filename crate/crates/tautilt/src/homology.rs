//! Projective covers, minimal presentations, g-vectors, the Nakayama functor,
//! the AR translate, syzygies, Ext and projective dimension.

use std::fmt;
use std::sync::Arc;

use crate::algebra::{opposite_arc, Algebra};
use crate::error::{Error, Result};
use crate::exactlin::{Echelon, Mat, Scalar};
use crate::rep::{column_space, decompose, find_isomorphism, hom_dim, RepMorphism, Representation};

/// Index of every basis element inside its `(src, tgt)` block.
fn block_positions(alg: &Algebra) -> Vec<usize> {
    let mut pos = vec![0; alg.dim()];
    for s in 0..alg.n_vertices() {
        for t in 0..alg.n_vertices() {
            for (i, &b) in alg.block(s, t).iter().enumerate() {
                pos[b] = i;
            }
        }
    }
    pos
}

/// `⊕ P(v)` over the listed vertices.
pub fn proj_sum(alg: &Arc<Algebra>, verts: &[usize]) -> Representation {
    let parts: Vec<Representation> = verts
        .iter()
        .map(|&v| Representation::projective(alg, v))
        .collect();
    Representation::sum(alg, &parts)
}

/// `⊕ I(v)` over the listed vertices.
pub fn inj_sum(alg: &Arc<Algebra>, verts: &[usize]) -> Representation {
    let parts: Vec<Representation> = verts
        .iter()
        .map(|&v| Representation::injective(alg, v))
        .collect();
    Representation::sum(alg, &parts)
}

/// A morphism `⊕ P(src[k]) → ⊕ P(tgt[l])`, stored as a matrix of algebra elements.
///
/// The component `P(i) → P(j)` is right multiplication `x ↦ x·c` by an element `c`
/// from the block with source `j` and target `i`.
#[derive(Clone)]
pub struct ProjMap {
    alg: Arc<Algebra>,
    pub src: Vec<usize>,
    pub tgt: Vec<usize>,
    entries: Vec<Vec<Vec<Scalar>>>,
}

impl fmt::Debug for ProjMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ProjMap{:?}→{:?}", self.src, self.tgt)
    }
}

impl PartialEq for ProjMap {
    fn eq(&self, other: &Self) -> bool {
        self.alg.uid() == other.alg.uid()
            && self.src == other.src
            && self.tgt == other.tgt
            && self.entries == other.entries
    }
}

impl ProjMap {
    pub fn zero(alg: &Arc<Algebra>, src: &[usize], tgt: &[usize]) -> Self {
        let entries = vec![vec![vec![Scalar::zero(); alg.dim()]; src.len()]; tgt.len()];
        ProjMap {
            alg: alg.clone(),
            src: src.to_vec(),
            tgt: tgt.to_vec(),
            entries,
        }
    }

    pub fn identity(alg: &Arc<Algebra>, verts: &[usize]) -> Self {
        let mut m = ProjMap::zero(alg, verts, verts);
        for (k, &v) in verts.iter().enumerate() {
            m.entries[k][k][alg.idempotent(v)] = Scalar::one();
        }
        m
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.alg
    }

    pub fn entry(&self, l: usize, k: usize) -> &[Scalar] {
        &self.entries[l][k]
    }

    pub fn set_entry(&mut self, l: usize, k: usize, x: Vec<Scalar>) {
        self.entries[l][k] = x;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().flatten().all(Scalar::is_zero)
    }

    /// `g ∘ self`.
    pub fn then(&self, g: &ProjMap) -> ProjMap {
        assert_eq!(self.tgt, g.src, "composing incompatible projective maps");
        let mut out = ProjMap::zero(&self.alg, &self.src, &g.tgt);
        for m in 0..g.tgt.len() {
            for k in 0..self.src.len() {
                let mut acc = vec![Scalar::zero(); self.alg.dim()];
                for l in 0..self.tgt.len() {
                    let p = self.alg.mul(&self.entries[l][k], &g.entries[m][l]);
                    for (a, b) in acc.iter_mut().zip(p) {
                        *a += &b;
                    }
                }
                out.entries[m][k] = acc;
            }
        }
        out
    }

    pub fn add(&self, other: &ProjMap) -> ProjMap {
        let mut out = self.clone();
        for (row, orow) in out.entries.iter_mut().zip(&other.entries) {
            for (e, oe) in row.iter_mut().zip(orow) {
                for (a, b) in e.iter_mut().zip(oe) {
                    *a += b;
                }
            }
        }
        out
    }

    pub fn scale(&self, s: &Scalar) -> ProjMap {
        let mut out = self.clone();
        for x in out.entries.iter_mut().flatten().flatten() {
            *x *= s;
        }
        out
    }

    /// Block matrix `[self | other]` out of `src ++ other.src`.
    pub fn hconcat(&self, other: &ProjMap) -> ProjMap {
        assert_eq!(self.tgt, other.tgt);
        let mut src = self.src.clone();
        src.extend_from_slice(&other.src);
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.iter().chain(b).cloned().collect())
            .collect();
        ProjMap {
            alg: self.alg.clone(),
            src,
            tgt: self.tgt.clone(),
            entries,
        }
    }

    /// Block matrix `[self ; other]` into `tgt ++ other.tgt`.
    pub fn vconcat(&self, other: &ProjMap) -> ProjMap {
        assert_eq!(self.src, other.src);
        let mut tgt = self.tgt.clone();
        tgt.extend_from_slice(&other.tgt);
        let entries = self.entries.iter().chain(&other.entries).cloned().collect();
        ProjMap {
            alg: self.alg.clone(),
            src: self.src.clone(),
            tgt,
            entries,
        }
    }

    pub fn direct_sum(&self, other: &ProjMap) -> ProjMap {
        let top = self.hconcat(&ProjMap::zero(&self.alg, &other.src, &self.tgt));
        let bottom = ProjMap::zero(&self.alg, &self.src, &other.tgt).hconcat(other);
        top.vconcat(&bottom)
    }

    /// Restricts to the listed source and target components.
    pub fn select(&self, src_idx: &[usize], tgt_idx: &[usize]) -> ProjMap {
        ProjMap {
            alg: self.alg.clone(),
            src: src_idx.iter().map(|&k| self.src[k]).collect(),
            tgt: tgt_idx.iter().map(|&l| self.tgt[l]).collect(),
            entries: tgt_idx
                .iter()
                .map(|&l| {
                    src_idx
                        .iter()
                        .map(|&k| self.entries[l][k].clone())
                        .collect()
                })
                .collect(),
        }
    }

    /// Coordinates on the canonical basis of `Hom(⊕P(src), ⊕P(tgt))`.
    pub fn coords(&self) -> Vec<Scalar> {
        let mut out = Vec::new();
        for (l, &j) in self.tgt.iter().enumerate() {
            for (k, &i) in self.src.iter().enumerate() {
                for &b in self.alg.block(j, i) {
                    out.push(self.entries[l][k][b].clone());
                }
            }
        }
        out
    }

    pub fn hom_dim(alg: &Algebra, src: &[usize], tgt: &[usize]) -> usize {
        tgt.iter()
            .map(|&j| src.iter().map(|&i| alg.block(j, i).len()).sum::<usize>())
            .sum()
    }

    pub fn from_coords(
        alg: &Arc<Algebra>,
        src: &[usize],
        tgt: &[usize],
        coords: &[Scalar],
    ) -> ProjMap {
        let mut out = ProjMap::zero(alg, src, tgt);
        let mut it = coords.iter();
        for (l, &j) in tgt.iter().enumerate() {
            for (k, &i) in src.iter().enumerate() {
                for &b in alg.block(j, i) {
                    out.entries[l][k][b] = it.next().expect("coordinate vector too short").clone();
                }
            }
        }
        out
    }

    /// The canonical basis of `Hom(⊕P(src), ⊕P(tgt))`.
    pub fn hom_basis(alg: &Arc<Algebra>, src: &[usize], tgt: &[usize]) -> Vec<ProjMap> {
        let d = ProjMap::hom_dim(alg, src, tgt);
        (0..d)
            .map(|i| {
                let mut c = vec![Scalar::zero(); d];
                c[i] = Scalar::one();
                ProjMap::from_coords(alg, src, tgt, &c)
            })
            .collect()
    }

    /// The module homomorphism `proj_sum(src) → proj_sum(tgt)`.
    pub fn to_morphism(&self) -> RepMorphism {
        let alg = &self.alg;
        let pos = block_positions(alg);
        let maps = (0..alg.n_vertices())
            .map(|v| {
                let row_off = offsets(self.tgt.iter().map(|&j| alg.block(j, v).len()));
                let col_off = offsets(self.src.iter().map(|&i| alg.block(i, v).len()));
                let mut m = Mat::zeros(*row_off.last().unwrap(), *col_off.last().unwrap());
                for (k, &i) in self.src.iter().enumerate() {
                    for (l, _) in self.tgt.iter().enumerate() {
                        let c = &self.entries[l][k];
                        for (xi, &x) in alg.block(i, v).iter().enumerate() {
                            for (cb, cv) in c.iter().enumerate() {
                                if cv.is_zero() {
                                    continue;
                                }
                                for (d, s) in alg.mul_basis(x, cb) {
                                    *m.get_mut(row_off[l] + pos[*d], col_off[k] + xi) += &(cv * s);
                                }
                            }
                        }
                    }
                }
                m
            })
            .collect();
        RepMorphism { maps }
    }

    /// Reads off a homomorphism between sums of projectives.
    pub fn from_morphism(
        alg: &Arc<Algebra>,
        src: &[usize],
        tgt: &[usize],
        f: &RepMorphism,
    ) -> ProjMap {
        let mut out = ProjMap::zero(alg, src, tgt);
        let pos = block_positions(alg);
        for (k, &i) in src.iter().enumerate() {
            // column of e_i inside the source sum at vertex i
            let col_off: usize = src[..k].iter().map(|&s| alg.block(s, i).len()).sum();
            let col = col_off + pos[alg.idempotent(i)];
            let mut row_off = 0;
            for (l, &j) in tgt.iter().enumerate() {
                for (r, &b) in alg.block(j, i).iter().enumerate() {
                    out.entries[l][k][b] = f.maps[i].get(row_off + r, col).clone();
                }
                row_off += alg.block(j, i).len();
            }
        }
        out
    }

    /// `ν` of this map: a homomorphism `inj_sum(src) → inj_sum(tgt)`.
    pub fn nakayama(&self) -> RepMorphism {
        let alg = &self.alg;
        let pos = block_positions(alg);
        let maps = (0..alg.n_vertices())
            .map(|v| {
                let row_off = offsets(self.tgt.iter().map(|&j| alg.block(v, j).len()));
                let col_off = offsets(self.src.iter().map(|&i| alg.block(v, i).len()));
                let mut m = Mat::zeros(*row_off.last().unwrap(), *col_off.last().unwrap());
                for (k, _) in self.src.iter().enumerate() {
                    for (l, &j) in self.tgt.iter().enumerate() {
                        let c = &self.entries[l][k];
                        for (yi, &y) in alg.block(v, j).iter().enumerate() {
                            for (cb, cv) in c.iter().enumerate() {
                                if cv.is_zero() {
                                    continue;
                                }
                                for (z, s) in alg.mul_basis(cb, y) {
                                    *m.get_mut(row_off[l] + yi, col_off[k] + pos[*z]) += &(cv * s);
                                }
                            }
                        }
                    }
                }
                m
            })
            .collect();
        RepMorphism { maps }
    }

    /// `Hom(−, A)` of this map, as a map between projectives of the opposite algebra.
    pub fn dual_over(&self, op: &Arc<Algebra>) -> ProjMap {
        let entries = (0..self.src.len())
            .map(|k| {
                (0..self.tgt.len())
                    .map(|l| self.entries[l][k].clone())
                    .collect()
            })
            .collect();
        ProjMap {
            alg: op.clone(),
            src: self.tgt.clone(),
            tgt: self.src.clone(),
            entries,
        }
    }

    /// The same map over an algebra with identical basis words.
    pub fn rebase(&self, alg: &Arc<Algebra>) -> ProjMap {
        ProjMap {
            alg: alg.clone(),
            ..self.clone()
        }
    }
}

fn offsets(sizes: impl Iterator<Item = usize>) -> Vec<usize> {
    let mut out = vec![0];
    for s in sizes {
        out.push(out.last().unwrap() + s);
    }
    out
}

/// Radical of a module, with its inclusion: the sum of images of all arrows.
pub fn radical_of_module(m: &Representation) -> Result<(Representation, RepMorphism)> {
    let alg = m.algebra();
    let basis: Vec<Mat> = (0..alg.n_vertices())
        .map(|v| {
            let mut acc = Mat::zeros(m.dims()[v], 0);
            for a in 0..alg.n_arrows() {
                if alg.arrow(a).tgt == v {
                    acc = acc.hstack(m.map(a));
                }
            }
            column_space(&acc)
        })
        .collect();
    m.sub_representation(&basis)
}

/// A projective cover `⊕ P(verts) → M`.
#[derive(Clone, Debug)]
pub struct Cover {
    pub verts: Vec<usize>,
    pub proj: Representation,
    pub map: RepMorphism,
}

/// Lifts generators `(vertex, vector)` of `M` to a map from a sum of projectives.
pub fn map_from_generators(m: &Representation, gens: &[(usize, Vec<Scalar>)]) -> Cover {
    let alg = m.algebra();
    let verts: Vec<usize> = gens.iter().map(|g| g.0).collect();
    let proj = proj_sum(alg, &verts);
    let actions: Vec<Mat> = (0..alg.dim()).map(|b| m.action(b)).collect();
    let maps = (0..alg.n_vertices())
        .map(|w| {
            let mut f = Mat::zeros(m.dims()[w], proj.dims()[w]);
            let mut col = 0;
            for (v, g) in gens {
                for &b in alg.block(*v, w) {
                    let img = actions[b].mul_vec(g);
                    for (r, x) in img.into_iter().enumerate() {
                        f.set(r, col, x);
                    }
                    col += 1;
                }
            }
            f
        })
        .collect();
    Cover {
        verts,
        proj,
        map: RepMorphism { maps },
    }
}

/// Generators of `M` lifting a basis of its top, ordered by vertex.
pub fn top_generators(m: &Representation) -> Result<Vec<(usize, Vec<Scalar>)>> {
    let (_, inc) = radical_of_module(m)?;
    let mut gens = Vec::new();
    for v in 0..m.dims().len() {
        let d = m.dims()[v];
        let mut e = Echelon::new(d);
        for c in 0..inc.maps[v].cols() {
            e.insert(&inc.maps[v].col(c));
        }
        for i in 0..d {
            let mut u = vec![Scalar::zero(); d];
            u[i] = Scalar::one();
            if e.insert(&u) {
                gens.push((v, u));
            }
        }
    }
    Ok(gens)
}

pub fn projective_cover(m: &Representation) -> Result<Cover> {
    Ok(map_from_generators(m, &top_generators(m)?))
}

/// First syzygy with its inclusion into the projective cover.
pub fn syzygy(m: &Representation) -> Result<(Representation, RepMorphism, Cover)> {
    let cover = projective_cover(m)?;
    let (k, inc) = cover.map.kernel(&cover.proj)?;
    Ok((k, inc, cover))
}

/// A minimal projective presentation `P1 → P0 → M → 0`.
#[derive(Clone, Debug)]
pub struct MinPresentation {
    pub p1: Vec<usize>,
    pub p0: Vec<usize>,
    pub p1_rep: Representation,
    pub p0_rep: Representation,
    pub d1: ProjMap,
    pub d0: RepMorphism,
}

impl MinPresentation {
    /// Multiplicities `α_i` of `P(i)` in `P0`.
    pub fn alpha(&self) -> Vec<usize> {
        count(&self.p0, self.p0_rep.dims().len())
    }

    pub fn beta(&self) -> Vec<usize> {
        count(&self.p1, self.p0_rep.dims().len())
    }
}

fn count(verts: &[usize], n: usize) -> Vec<usize> {
    let mut c = vec![0; n];
    for &v in verts {
        c[v] += 1;
    }
    c
}

pub fn min_presentation(m: &Representation) -> Result<MinPresentation> {
    let alg = m.algebra().clone();
    let (k, inc, c0) = syzygy(m)?;
    let c1 = projective_cover(&k)?;
    let d1m = inc.after(&c1.map);
    let d1 = ProjMap::from_morphism(&alg, &c1.verts, &c0.verts, &d1m);
    Ok(MinPresentation {
        p1: c1.verts,
        p0: c0.verts,
        p1_rep: c1.proj,
        p0_rep: c0.proj,
        d1,
        d0: c0.map,
    })
}

pub type GVector = Vec<i64>;

pub fn g_vector(m: &Representation) -> Result<GVector> {
    let p = min_presentation(m)?;
    Ok(p.alpha()
        .iter()
        .zip(p.beta())
        .map(|(&a, b)| a as i64 - b as i64)
        .collect())
}

/// Identifies a module as a sum of indecomposable projectives.
pub fn projective_vertices(m: &Representation) -> Result<Vec<usize>> {
    let alg = m.algebra();
    let mut verts = Vec::new();
    for part in decompose(m)?.parts {
        let v = (0..alg.n_vertices())
            .find(|&v| {
                part.dims() == Representation::projective(alg, v).dims()
                    && find_isomorphism(&part, &Representation::projective(alg, v))
                        .ok()
                        .flatten()
                        .is_some()
            })
            .ok_or_else(|| Error::NotProjective(format!("summand with dims {:?}", part.dims())))?;
        verts.push(v);
    }
    verts.sort_unstable();
    Ok(verts)
}

/// `ν P` for a projective module.
pub fn nakayama_module(p: &Representation) -> Result<Representation> {
    Ok(inj_sum(p.algebra(), &projective_vertices(p)?))
}

/// The AR translate `τ M = ker ν(d1)`.
pub fn tau(m: &Representation) -> Result<Representation> {
    if m.is_zero() {
        return Ok(m.clone());
    }
    let p = min_presentation(m)?;
    if p.p1.is_empty() {
        return Ok(Representation::zero(m.algebra()));
    }
    let nu = p.d1.nakayama();
    let src = inj_sum(m.algebra(), &p.p1);
    Ok(nu.kernel(&src)?.0)
}

/// `τ⁻¹ M = D τ_{op} D M`.
pub fn tau_inverse(m: &Representation) -> Result<Representation> {
    let op = opposite_arc(m.algebra());
    let t = tau(&m.dual(&op)?)?;
    t.dual(m.algebra())
}

/// `D Tr M`, computed through `Hom(−, A)` over the opposite algebra.
pub fn dtr(m: &Representation) -> Result<Representation> {
    let alg = m.algebra();
    let p = min_presentation(m)?;
    if p.p1.is_empty() {
        return Ok(Representation::zero(alg));
    }
    let op = opposite_arc(alg);
    let dual = p.d1.dual_over(&op);
    let (tr, _) = dual.to_morphism().cokernel(&proj_sum(&op, &p.p1))?;
    tr.dual(alg)
}

/// `dim Ext^n(M, N)` by dimension shift along minimal syzygies.
pub fn ext_dim(n: usize, m: &Representation, x: &Representation) -> Result<usize> {
    assert!(n >= 1, "Ext degree must be positive");
    let mut cur = m.clone();
    for _ in 1..n {
        if cur.is_zero() {
            return Ok(0);
        }
        cur = syzygy(&cur)?.0;
    }
    if cur.is_zero() {
        return Ok(0);
    }
    let (omega, _, cover) = syzygy(&cur)?;
    // 0 → Hom(M,N) → Hom(P0,N) → Hom(ΩM,N) → Ext¹(M,N) → 0
    Ok(hom_dim(&omega, x) + hom_dim(&cur, x) - hom_dim(&cover.proj, x))
}

/// A projective dimension, possibly cut off at a cap.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pd {
    Finite(usize),
    AtLeast(usize),
}

impl fmt::Display for Pd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Pd::Finite(d) => write!(f, "{d}"),
            Pd::AtLeast(d) => write!(f, "≥ {d}"),
        }
    }
}

pub const DEFAULT_PD_CAP: usize = 32;

pub fn pd_capped(m: &Representation, cap: usize) -> Result<Pd> {
    let mut cur = m.clone();
    for k in 0..cap {
        if cur.is_zero() {
            return Ok(Pd::Finite(k.saturating_sub(1)));
        }
        let (next, _, _) = syzygy(&cur)?;
        if next.is_zero() {
            return Ok(Pd::Finite(k));
        }
        cur = next;
    }
    Ok(Pd::AtLeast(cap))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::rep::{induction, is_isomorphic};

    fn arc(a: crate::algebra::Algebra) -> Arc<Algebra> {
        Arc::new(a)
    }

    /// All indecomposables of a representation-finite hereditary algebra, as `τ⁻ᵏ P(i)`.
    fn preprojectives(alg: &Arc<Algebra>) -> Vec<Representation> {
        let mut out = Vec::new();
        for i in 0..alg.n_vertices() {
            let mut x = Representation::projective(alg, i);
            while !x.is_zero() {
                out.push(x.clone());
                x = tau_inverse(&x).unwrap();
            }
        }
        out
    }

    #[test]
    fn radicals() {
        let a = arc(fixtures::a2());
        assert!(radical_of_module(&Representation::simple(&a, 0))
            .unwrap()
            .0
            .is_zero());
        let (r, _) = radical_of_module(&Representation::projective(&a, 0)).unwrap();
        assert_eq!(r.dims(), &[0, 1]);
        let lam = arc(fixtures::example7());
        let (r, _) = radical_of_module(&Representation::projective(&lam, 0)).unwrap();
        assert_eq!(r.total_dim(), 7);
    }

    #[test]
    fn presentations_over_a2() {
        let a = arc(fixtures::a2());
        let p = min_presentation(&Representation::projective(&a, 0)).unwrap();
        assert!(p.p1.is_empty());
        assert_eq!(p.p0, vec![0]);
        let s = min_presentation(&Representation::simple(&a, 0)).unwrap();
        assert_eq!((s.p1.clone(), s.p0.clone()), (vec![1], vec![0]));
        assert_eq!(
            g_vector(&Representation::simple(&a, 0)).unwrap(),
            vec![1, -1]
        );
        assert_eq!(
            g_vector(&Representation::projective(&a, 1)).unwrap(),
            vec![0, 1]
        );
    }

    #[test]
    fn presentations_are_minimal_and_exact() {
        let lam = arc(fixtures::example7());
        let a3 = arc(fixtures::a3_rad2());
        let mut mods = vec![
            Representation::injective(&lam, 0),
            Representation::simple(&lam, 0),
            Representation::injective(&lam, 1),
        ];
        mods.extend((0..3).map(|i| Representation::simple(&a3, i)));
        for m in mods {
            let p = min_presentation(&m).unwrap();
            let d1 = p.d1.to_morphism();
            assert!(d1.is_morphism(&p.p1_rep, &p.p0_rep));
            assert!(p.d0.is_surjective(&m));
            assert!(p.d0.after(&d1).is_zero());
            let (k, _) = p.d0.kernel(&p.p0_rep).unwrap();
            let (im, _) = d1.image(&p.p0_rep).unwrap();
            assert_eq!(k.dims(), im.dims());
            // the image of d1 lies in the radical of P0
            let (rad, rinc) = radical_of_module(&p.p0_rep).unwrap();
            for v in 0..rad.dims().len() {
                let span = rinc.maps[v].hstack(&d1.maps[v]);
                assert_eq!(span.rank(), rad.dims()[v]);
            }
        }
    }

    #[test]
    fn projmap_round_trip() {
        let lam = arc(fixtures::example7());
        let basis = ProjMap::hom_basis(&lam, &[0, 1], &[0]);
        assert_eq!(basis.len(), 8);
        for f in &basis {
            let m = f.to_morphism();
            assert!(m.is_morphism(&proj_sum(&lam, &[0, 1]), &proj_sum(&lam, &[0])));
            assert_eq!(&ProjMap::from_morphism(&lam, &[0, 1], &[0], &m), f);
        }
        // composition agrees with composition of module maps
        let f = &ProjMap::hom_basis(&lam, &[1], &[0])[2];
        let g = &ProjMap::hom_basis(&lam, &[0], &[0])[1];
        assert_eq!(
            f.then(g).to_morphism(),
            g.to_morphism().after(&f.to_morphism())
        );
    }

    #[test]
    fn nakayama_functor() {
        let a = arc(fixtures::a2());
        let p1 = Representation::projective(&a, 0);
        assert!(is_isomorphic(
            &nakayama_module(&p1).unwrap(),
            &Representation::injective(&a, 0)
        ));
        let id = ProjMap::identity(&a, &[0, 1]).nakayama();
        assert_eq!(id, RepMorphism::identity(&inj_sum(&a, &[0, 1])));
        let lam = arc(fixtures::example7());
        let base = lam.provenance().unwrap().base.clone();
        let up = nakayama_module(&induction(&lam, &Representation::projective(&base, 0)).unwrap())
            .unwrap();
        let down = induction(
            &lam,
            &nakayama_module(&Representation::projective(&base, 0)).unwrap(),
        )
        .unwrap();
        assert!(is_isomorphic(&up, &down));
        assert!(nakayama_module(&Representation::simple(&lam, 0)).is_err());
        for f in ProjMap::hom_basis(&lam, &[0, 1], &[1, 0]) {
            assert!(f
                .nakayama()
                .is_morphism(&inj_sum(&lam, &[0, 1]), &inj_sum(&lam, &[1, 0])));
        }
    }

    #[test]
    fn tau_examples() {
        let a = arc(fixtures::a2());
        assert!(tau(&Representation::projective(&a, 0)).unwrap().is_zero());
        assert!(is_isomorphic(
            &tau(&Representation::simple(&a, 0)).unwrap(),
            &Representation::simple(&a, 1)
        ));
        let lam = arc(fixtures::example7());
        let base = lam.provenance().unwrap().base.clone();
        let up = tau(&induction(&lam, &Representation::simple(&base, 0)).unwrap()).unwrap();
        let down = induction(&lam, &Representation::simple(&base, 1)).unwrap();
        assert!(is_isomorphic(&up, &down));
    }

    #[test]
    fn tau_matches_dtr_oracle() {
        for alg in [
            arc(fixtures::a2()),
            arc(fixtures::a3()),
            arc(fixtures::a3_rad2()),
        ] {
            for m in preprojectives(&alg) {
                let a = tau(&m).unwrap();
                let b = dtr(&m).unwrap();
                assert!(is_isomorphic(&a, &b), "dims {:?}", m.dims());
            }
        }
        let lam = arc(fixtures::example7());
        for m in [
            Representation::simple(&lam, 0),
            Representation::simple(&lam, 1),
            Representation::injective(&lam, 0),
            Representation::injective(&lam, 1),
        ] {
            assert!(is_isomorphic(&tau(&m).unwrap(), &dtr(&m).unwrap()));
        }
    }

    #[test]
    fn preprojective_counts() {
        assert_eq!(preprojectives(&arc(fixtures::a2())).len(), 3);
        assert_eq!(preprojectives(&arc(fixtures::a3())).len(), 6);
        assert_eq!(preprojectives(&arc(fixtures::a3_rad2())).len(), 5);
    }

    #[test]
    fn ext_examples() {
        let a = arc(fixtures::a3_rad2());
        let s: Vec<_> = (0..3).map(|i| Representation::simple(&a, i)).collect();
        assert!(ext_dim(2, &s[0], &s[2]).unwrap() >= 1);
        assert_eq!(
            ext_dim(1, &Representation::projective(&a, 0), &s[1]).unwrap(),
            0
        );
        assert_eq!(ext_dim(1, &s[0], &s[1]).unwrap(), 1);
        assert_eq!(pd_capped(&s[0], 8).unwrap(), Pd::Finite(2));
        assert_eq!(
            pd_capped(&Representation::projective(&a, 1), 8).unwrap(),
            Pd::Finite(0)
        );
        let a2 = arc(fixtures::a2());
        assert_eq!(
            pd_capped(&Representation::simple(&a2, 0), 8).unwrap(),
            Pd::Finite(1)
        );
        let lam = arc(fixtures::example7());
        assert_eq!(
            pd_capped(&Representation::simple(&lam, 1), 3).unwrap(),
            Pd::AtLeast(3)
        );
    }

    #[test]
    fn ar_duality_on_hereditary_fixtures() {
        for alg in [arc(fixtures::a2()), arc(fixtures::a3())] {
            let ind = preprojectives(&alg);
            for m in &ind {
                let tm = tau(m).unwrap();
                for n in &ind {
                    assert_eq!(ext_dim(1, m, n).unwrap(), hom_dim(n, &tm));
                }
            }
        }
    }

    #[test]
    fn tensor_hom_ext_formulas() {
        let lam = arc(fixtures::example7());
        let base = lam.provenance().unwrap().base.clone();
        let ind = preprojectives(&base);
        let up: Vec<_> = ind.iter().map(|m| induction(&lam, m).unwrap()).collect();
        for (i, m) in ind.iter().enumerate() {
            assert_eq!(g_vector(&up[i]).unwrap(), g_vector(m).unwrap());
            for (j, n) in ind.iter().enumerate() {
                assert_eq!(hom_dim(&up[i], &up[j]), 4 * hom_dim(m, n));
                assert_eq!(
                    ext_dim(1, &up[i], &up[j]).unwrap(),
                    4 * ext_dim(1, m, n).unwrap()
                );
            }
        }
    }

    #[test]
    fn g_vectors_add() {
        let a = arc(fixtures::a3());
        let ind = preprojectives(&a);
        for m in &ind {
            for n in &ind {
                let s = Representation::sum(&a, &[m.clone(), n.clone()]);
                let g: Vec<i64> = g_vector(m)
                    .unwrap()
                    .iter()
                    .zip(g_vector(n).unwrap())
                    .map(|(x, y)| x + y)
                    .collect();
                assert_eq!(g_vector(&s).unwrap(), g);
            }
        }
    }
}
