//! Signed τ-exceptional sequences, the ψ/φ correspondence with ordered support
//! τ-rigid objects, classical exceptional sequences, and induction along `Λ = R ⊗ kQ`.

use std::collections::HashMap;
use std::sync::Arc;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::homology::ext_dim;
use crate::rep::{hom_dim, induction, is_indecomposable, is_isomorphic, Representation};
use crate::tau::{is_tau_rigid, preprojective_component, projective_vertex, SignedObject};
use crate::wide::WideEngine;

/// `(U_1, …, U_t)` with `U_i` indecomposable support τ-rigid in `W_i`, where
/// `W_t` is the ambient level and `W_{i-1} = J_{W_i}(U_i)`.
#[derive(Clone, Debug)]
pub struct SignedSequence {
    /// Ambient forms; a shifted entry carries the projective of its level.
    pub entries: Vec<SignedObject>,
    /// Engine level holding each entry.
    pub levels: Vec<usize>,
    /// Catalog index of each entry at its level.
    pub indices: Vec<usize>,
}

impl SignedSequence {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_unsigned(&self) -> bool {
        self.entries.iter().all(|e| !e.shifted)
    }

    /// Entrywise isomorphism of ambient forms.
    pub fn iso(&self, other: &SignedSequence) -> bool {
        self.len() == other.len()
            && self
                .entries
                .iter()
                .zip(&other.entries)
                .all(|(a, b)| a.iso(b))
    }
}

/// An ordered list of pairwise compatible, pairwise distinct indecomposable objects.
#[derive(Clone, Debug)]
pub struct OrderedSupportRigid {
    /// Indices into the engine's ambient catalog.
    pub indices: Vec<usize>,
    pub objects: Vec<SignedObject>,
}

impl OrderedSupportRigid {
    pub fn iso(&self, other: &OrderedSupportRigid) -> bool {
        self.objects.len() == other.objects.len()
            && self
                .objects
                .iter()
                .zip(&other.objects)
                .all(|(a, b)| a.iso(b))
    }
}

/// Sequences of length `t` in the subcategory at `level`, by recursion on the last entry.
pub fn enumerate_at(
    engine: &mut WideEngine,
    level: usize,
    t: usize,
    signed: bool,
) -> Result<Vec<SignedSequence>> {
    let mut memo = HashMap::new();
    enumerate_memo(engine, level, t, signed, &mut memo)
}

fn enumerate_memo(
    engine: &mut WideEngine,
    level: usize,
    t: usize,
    signed: bool,
    memo: &mut HashMap<(usize, usize), Vec<SignedSequence>>,
) -> Result<Vec<SignedSequence>> {
    if t == 0 {
        return Ok(vec![SignedSequence {
            entries: Vec::new(),
            levels: Vec::new(),
            indices: Vec::new(),
        }]);
    }
    if let Some(v) = memo.get(&(level, t)) {
        return Ok(v.clone());
    }
    let objects = engine.level(level).catalog.objects.clone();
    let mut out = Vec::new();
    for (idx, o) in objects.iter().enumerate() {
        if o.shifted && !signed {
            continue;
        }
        let child = engine.child(level, &[idx])?;
        let prefixes = enumerate_memo(engine, child, t - 1, signed, memo)?;
        if prefixes.is_empty() {
            continue;
        }
        let last = engine.level(level).ambient_object(idx)?;
        for p in prefixes {
            let mut s = p;
            s.entries.push(last.clone());
            s.levels.push(level);
            s.indices.push(idx);
            out.push(s);
        }
    }
    memo.insert((level, t), out.clone());
    Ok(out)
}

/// Signed (or unsigned) τ-exceptional sequences of length `t` in the ambient category.
pub fn enumerate_tau_exceptional(
    engine: &mut WideEngine,
    t: usize,
    signed: bool,
) -> Result<Vec<SignedSequence>> {
    enumerate_at(engine, 0, t, signed)
}

/// Re-validates the certificate chain of a sequence.
pub fn verify_sequence(engine: &mut WideEngine, s: &SignedSequence) -> Result<()> {
    let t = s.len();
    if t == 0 {
        return Ok(());
    }
    if s.levels[t - 1] != 0 {
        return Err(Error::Verification(
            "last entry must live in the ambient level".into(),
        ));
    }
    for i in (0..t).rev() {
        let lvl = engine.level(s.levels[i]).clone();
        let idx = lvl.locate(&s.entries[i])?;
        if idx != s.indices[i] {
            return Err(Error::Verification(format!(
                "entry {} does not match its catalog index",
                s.entries[i].label()
            )));
        }
        let local = lvl.from_ambient(&s.entries[i].module)?;
        let ok = if s.entries[i].shifted {
            projective_vertex(&local).is_some()
        } else {
            is_indecomposable(&local)?.indecomposable && is_tau_rigid(&local)?
        };
        if !ok {
            return Err(Error::Verification(format!(
                "entry {} is not support τ-rigid in its level",
                s.entries[i].label()
            )));
        }
        if i > 0 && engine.child(s.levels[i], &[s.indices[i]])? != s.levels[i - 1] {
            return Err(Error::Verification(format!(
                "level chain broken at entry {}",
                i + 1
            )));
        }
    }
    Ok(())
}

/// All ordered support τ-rigid objects with `t` summands.
pub fn ordered_support_rigid(engine: &WideEngine, t: usize) -> Vec<OrderedSupportRigid> {
    let cat = &engine.level(0).catalog;
    cat.cliques(t)
        .into_iter()
        .filter(|c| c.len() == t)
        .flat_map(|c| c.into_iter().permutations(t).collect_vec())
        .map(|p| OrderedSupportRigid {
            objects: p.iter().map(|&i| cat.objects[i].clone()).collect(),
            indices: p,
        })
        .collect()
}

/// `ψ(T_1, …, T_t) = (U_1, …, U_t)` with `U_i = ε_{T_{i+1} ⊕ … ⊕ T_t}(T_i)`, by iterated ε.
pub fn psi(engine: &mut WideEngine, ordered: &OrderedSupportRigid) -> Result<SignedSequence> {
    psi_at(engine, 0, &ordered.indices)
}

/// `ψ` for an ordered object given by catalog indices of the subcategory at `level`.
pub fn psi_at(engine: &mut WideEngine, start: usize, ordered: &[usize]) -> Result<SignedSequence> {
    let t = ordered.len();
    let mut cur = ordered.to_vec();
    let mut level = start;
    let mut levels = vec![0; t];
    let mut indices = vec![0; t];
    for i in (0..t).rev() {
        levels[i] = level;
        indices[i] = cur[i];
        let u = cur[i];
        for c in cur.iter_mut().take(i) {
            *c = engine.epsilon(level, &[u], *c)?;
        }
        level = engine.child(level, &[u])?;
    }
    let entries = (0..t)
        .map(|i| engine.level(levels[i]).ambient_object(indices[i]))
        .collect::<Result<_>>()?;
    Ok(SignedSequence {
        entries,
        levels,
        indices,
    })
}

/// Inverse of `ψ`, lifting level by level with `ε⁻¹`.
pub fn phi(engine: &mut WideEngine, s: &SignedSequence) -> Result<OrderedSupportRigid> {
    let t = s.len();
    let mut lifted: Vec<usize> = Vec::with_capacity(t);
    for i in 0..t {
        let lvl = s.levels[i];
        let u = s.indices[i];
        lifted = lifted
            .iter()
            .map(|&w| engine.epsilon_inverse(lvl, &[u], w))
            .collect::<Result<_>>()?;
        lifted.push(u);
    }
    let cat = &engine.level(0).catalog;
    Ok(OrderedSupportRigid {
        objects: lifted.iter().map(|&i| cat.objects[i].clone()).collect(),
        indices: lifted,
    })
}

/// Classical exceptional sequences of length `t` over a representation-finite hereditary algebra:
/// exceptional entries with `Hom(M_i, M_j) = 0 = Ext^{≥1}(M_i, M_j)` for `j < i`.
pub fn classical_exceptional(alg: &Arc<Algebra>, t: usize) -> Result<Vec<Vec<Representation>>> {
    if !alg.is_path_algebra() {
        return Err(Error::NotHereditary(format!(
            "algebra with {} vertices has relations",
            alg.n_vertices()
        )));
    }
    let indecs = preprojective_component(alg)?;
    let exceptional: Vec<Representation> = indecs
        .into_iter()
        .filter(|m| hom_dim(m, m) == 1 && ext_dim(1, m, m).map(|e| e == 0).unwrap_or(false))
        .collect();
    let k = exceptional.len();
    let mut hom = vec![vec![0; k]; k];
    let mut ext = vec![vec![0; k]; k];
    for a in 0..k {
        for b in 0..k {
            hom[a][b] = hom_dim(&exceptional[a], &exceptional[b]);
            ext[a][b] = ext_dim(1, &exceptional[a], &exceptional[b])?;
        }
    }
    let mut out = Vec::new();
    for tuple in (0..t).map(|_| 0..k).multi_cartesian_product() {
        let ok = (0..t)
            .all(|i| (0..i).all(|j| hom[tuple[i]][tuple[j]] == 0 && ext[tuple[i]][tuple[j]] == 0));
        if ok {
            out.push(tuple.iter().map(|&i| exceptional[i].clone()).collect());
        }
    }
    Ok(out)
}

/// `Λ ⊗_{kQ} −` on a signed object; the module is moved onto the base algebra first.
pub fn induce_object(lam: &Arc<Algebra>, o: &SignedObject) -> Result<SignedObject> {
    let base = &lam
        .provenance()
        .ok_or_else(|| Error::Provenance("not a tensor algebra".into()))?
        .base;
    let m = o.module.rebase(base)?;
    Ok(SignedObject {
        module: induction(lam, &m)?,
        shifted: o.shifted,
    })
}

/// Entrywise induction, located in an upstairs enumeration.
pub fn induce_sequence(
    lam: &Arc<Algebra>,
    s: &SignedSequence,
    upstairs: &[SignedSequence],
) -> Result<usize> {
    let induced: Vec<SignedObject> = s
        .entries
        .iter()
        .map(|e| induce_object(lam, e))
        .collect::<Result<_>>()?;
    let hits: Vec<usize> = upstairs
        .iter()
        .positions(|u| {
            u.len() == induced.len() && u.entries.iter().zip(&induced).all(|(a, b)| a.iso(b))
        })
        .collect();
    match hits.as_slice() {
        [i] => Ok(*i),
        [] => Err(Error::NoPreimage(format!(
            "induced sequence {} is not among the enumerated ones",
            induced.iter().map(SignedObject::label).join(" ")
        ))),
        _ => Err(Error::NonUniquePreimage(format!(
            "induced sequence matches {hits:?}"
        ))),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SequenceBijectionReport {
    pub length: usize,
    pub signed: bool,
    pub downstairs: usize,
    pub upstairs: usize,
    pub injective: bool,
    pub surjective: bool,
    /// Ordered objects on which `Λ ⊗ ψ = ψ ∘ (Λ ⊗ −)` was checked, and how many agreed.
    pub psi_checked: usize,
    pub psi_agree: usize,
}

impl SequenceBijectionReport {
    pub fn ok(&self) -> bool {
        self.injective
            && self.surjective
            && self.downstairs == self.upstairs
            && self.psi_checked == self.psi_agree
    }
}

/// Induces every sequence over `kQ` and matches it against an independent enumeration over `Λ`.
/// `kq` must be built on the base algebra of `lam`'s algebra.
pub fn verify_sequence_bijection(
    kq: &mut WideEngine,
    lam: &mut WideEngine,
    t: usize,
    signed: bool,
) -> Result<SequenceBijectionReport> {
    let lam_alg = lam.algebra().clone();
    let down = enumerate_tau_exceptional(kq, t, signed)?;
    let up = enumerate_tau_exceptional(lam, t, signed)?;
    let mut hit = vec![false; up.len()];
    let mut injective = true;
    for s in &down {
        let i = induce_sequence(&lam_alg, s, &up)?;
        if hit[i] {
            injective = false;
        }
        hit[i] = true;
    }
    let mut psi_checked = 0;
    let mut psi_agree = 0;
    for o in ordered_support_rigid(kq, t) {
        if !signed && o.objects.iter().any(|x| x.shifted) {
            continue;
        }
        let ind: Vec<SignedObject> = o
            .objects
            .iter()
            .map(|x| induce_object(&lam_alg, x))
            .collect::<Result<_>>()?;
        let cat = &lam.level(0).catalog;
        let indices = ind
            .iter()
            .map(|x| {
                cat.index_of(x).ok_or_else(|| {
                    Error::NotInSubcategory(format!("{} is not in the catalog", x.label()))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let up_psi = psi(
            lam,
            &OrderedSupportRigid {
                indices,
                objects: ind,
            },
        )?;
        let down_psi = psi(kq, &o)?;
        psi_checked += 1;
        let induced: Vec<SignedObject> = down_psi
            .entries
            .iter()
            .map(|e| induce_object(&lam_alg, e))
            .collect::<Result<_>>()?;
        if up_psi.entries.iter().zip(&induced).all(|(a, b)| a.iso(b)) {
            psi_agree += 1;
        }
    }
    Ok(SequenceBijectionReport {
        length: t,
        signed,
        downstairs: down.len(),
        upstairs: up.len(),
        injective,
        surjective: hit.iter().all(|&h| h),
        psi_checked,
        psi_agree,
    })
}

/// `P3`, `S1`, `I2` or `P1[1]` when the module is a projective, simple or injective
/// (in that order of preference); the dimension vector otherwise.
pub fn object_name(alg: &Arc<Algebra>, o: &SignedObject) -> String {
    let n = alg.n_vertices();
    let m = &o.module;
    let base = (0..n)
        .find(|&i| is_isomorphic(m, &Representation::projective(alg, i)))
        .map(|i| format!("P{}", i + 1))
        .or_else(|| {
            (0..n)
                .find(|&i| is_isomorphic(m, &Representation::simple(alg, i)))
                .map(|i| format!("S{}", i + 1))
        })
        .or_else(|| {
            (0..n)
                .find(|&i| is_isomorphic(m, &Representation::injective(alg, i)))
                .map(|i| format!("I{}", i + 1))
        })
        .unwrap_or_else(|| format!("({})", m.dims().iter().join(",")));
    if o.shifted {
        format!("{base}[1]")
    } else {
        base
    }
}

pub fn sequence_names(alg: &Arc<Algebra>, s: &SignedSequence) -> Vec<String> {
    s.entries.iter().map(|e| object_name(alg, e)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryRow {
    pub name: String,
    pub dims: Vec<usize>,
    pub shifted: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SequenceRow {
    pub entries: Vec<EntryRow>,
}

pub fn sequence_rows(alg: &Arc<Algebra>, seqs: &[SignedSequence]) -> Vec<SequenceRow> {
    seqs.iter()
        .map(|s| SequenceRow {
            entries: s
                .entries
                .iter()
                .map(|e| EntryRow {
                    name: object_name(alg, e),
                    dims: e.module.dims().to_vec(),
                    shifted: e.shifted,
                })
                .collect(),
        })
        .collect()
}

/// One sequence per line: `(P1, S1)`.
pub fn sequence_table(alg: &Arc<Algebra>, seqs: &[SignedSequence]) -> String {
    seqs.iter()
        .map(|s| format!("({})\n", sequence_names(alg, s).join(", ")))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use std::collections::BTreeSet;

    fn arc(a: Algebra) -> Arc<Algebra> {
        Arc::new(a)
    }

    fn name_set(alg: &Arc<Algebra>, seqs: &[SignedSequence]) -> BTreeSet<String> {
        seqs.iter()
            .map(|s| sequence_names(alg, s).join(","))
            .collect()
    }

    fn set(items: &[&str]) -> BTreeSet<String> {
        items.iter().map(|s| s.to_string()).collect()
    }

    const KQ_SIGNED: [&str; 10] = [
        "P1,S1",
        "P1[1],S1",
        "P2,P1",
        "P2,P1[1]",
        "P2[1],P1",
        "P2[1],P1[1]",
        "S1,P2",
        "S1,P2[1]",
        "S1[1],P2",
        "S1[1],P2[1]",
    ];

    #[test]
    fn a2_tables() {
        let a = arc(fixtures::a2());
        let mut e = WideEngine::new(&a).unwrap();
        let unsigned = enumerate_tau_exceptional(&mut e, 2, false).unwrap();
        assert_eq!(name_set(&a, &unsigned), set(&["P1,S1", "P2,P1", "S1,P2"]));
        let signed = enumerate_tau_exceptional(&mut e, 2, true).unwrap();
        assert_eq!(signed.len(), 10);
        assert_eq!(name_set(&a, &signed), set(&KQ_SIGNED));
        let filtered: Vec<SignedSequence> =
            signed.iter().filter(|s| s.is_unsigned()).cloned().collect();
        assert_eq!(name_set(&a, &filtered), name_set(&a, &unsigned));
        for s in &signed {
            verify_sequence(&mut e, s).unwrap();
        }
    }

    #[test]
    fn example_seven_table() {
        let lam = arc(fixtures::example7());
        let mut e = WideEngine::new(&lam).unwrap();
        let signed = enumerate_tau_exceptional(&mut e, 2, true).unwrap();
        let expected = set(&[
            "P1,I1",
            "P1[1],I1",
            "P2,P1",
            "P2,P1[1]",
            "P2[1],P1",
            "P2[1],P1[1]",
            "I1,P2",
            "I1,P2[1]",
            "I1[1],P2",
            "I1[1],P2[1]",
        ]);
        assert_eq!(signed.len(), 10);
        assert_eq!(name_set(&lam, &signed), expected);
    }

    #[test]
    fn classical_agrees_with_unsigned_on_hereditary() {
        let a = arc(fixtures::a2());
        let classical = classical_exceptional(&a, 2).unwrap();
        let mut e = WideEngine::new(&a).unwrap();
        let unsigned = enumerate_tau_exceptional(&mut e, 2, false).unwrap();
        assert_eq!(classical.len(), unsigned.len());
        for c in &classical {
            assert!(unsigned.iter().any(|s| s
                .entries
                .iter()
                .zip(c)
                .all(|(x, y)| is_isomorphic(&x.module, y))));
        }
        let a3 = arc(fixtures::a3());
        let c3 = classical_exceptional(&a3, 3).unwrap();
        assert_eq!(c3.len(), 16);
        assert_eq!(classical_exceptional(&a3, 1).unwrap().len(), 6);
        let mut e3 = WideEngine::new(&a3).unwrap();
        let u3 = enumerate_tau_exceptional(&mut e3, 3, false).unwrap();
        assert_eq!(u3.len(), 16);
        for c in &c3 {
            assert!(u3.iter().any(|s| s
                .entries
                .iter()
                .zip(c)
                .all(|(x, y)| is_isomorphic(&x.module, y))));
        }
        assert!(matches!(
            classical_exceptional(&arc(fixtures::a3_rad2()), 1),
            Err(Error::NotHereditary(_))
        ));
    }

    #[test]
    fn a3_signed_count() {
        let a3 = arc(fixtures::a3());
        let mut e = WideEngine::new(&a3).unwrap();
        let signed = enumerate_tau_exceptional(&mut e, 3, true).unwrap();
        assert_eq!(signed.len(), 84);
        assert_eq!(ordered_support_rigid(&e, 3).len(), 84);
    }

    #[test]
    fn psi_examples() {
        let a = arc(fixtures::a2());
        let mut e = WideEngine::new(&a).unwrap();
        for o in ordered_support_rigid(&e, 1) {
            let s = psi(&mut e, &o).unwrap();
            assert!(s.entries[0].iso(&o.objects[0]));
        }
        let cat = e.level(0).catalog.clone();
        let p1 = cat
            .index_of(&SignedObject::module(Representation::projective(&a, 0)))
            .unwrap();
        let s1 = cat
            .index_of(&SignedObject::module(Representation::simple(&a, 0)))
            .unwrap();
        let o = OrderedSupportRigid {
            indices: vec![p1, s1],
            objects: vec![cat.objects[p1].clone(), cat.objects[s1].clone()],
        };
        let s = psi(&mut e, &o).unwrap();
        assert_eq!(sequence_names(&a, &s), vec!["P1", "S1"]);
    }

    #[test]
    fn psi_phi_round_trips() {
        for alg in [arc(fixtures::a2()), arc(fixtures::a3())] {
            let n = alg.n_vertices();
            let mut e = WideEngine::new(&alg).unwrap();
            for o in ordered_support_rigid(&e, n) {
                let s = psi(&mut e, &o).unwrap();
                assert!(phi(&mut e, &s).unwrap().iso(&o));
            }
            for s in enumerate_tau_exceptional(&mut e, n, true).unwrap() {
                let o = phi(&mut e, &s).unwrap();
                assert!(psi(&mut e, &o).unwrap().iso(&s));
            }
        }
    }

    #[test]
    fn induction_bijection_on_example_seven() {
        let lam = arc(fixtures::example7());
        let base = lam.provenance().unwrap().base.clone();
        let mut kq = WideEngine::new(&base).unwrap();
        let mut up = WideEngine::new(&lam).unwrap();
        let r = verify_sequence_bijection(&mut kq, &mut up, 2, true).unwrap();
        assert!(r.ok(), "{r:?}");
        assert_eq!((r.downstairs, r.upstairs, r.psi_checked), (10, 10, 10));
        let first = enumerate_tau_exceptional(&mut kq, 2, true).unwrap();
        let ups = enumerate_tau_exceptional(&mut up, 2, true).unwrap();
        let p1s1 = first
            .iter()
            .find(|s| sequence_names(&base, s) == ["P1", "S1"])
            .unwrap();
        let i = induce_sequence(&lam, p1s1, &ups).unwrap();
        assert_eq!(sequence_names(&lam, &ups[i]), vec!["P1", "I1"]);
    }

    #[test]
    fn table_rows_round_trip_through_json() {
        let a = arc(fixtures::a2());
        let mut e = WideEngine::new(&a).unwrap();
        let seqs = enumerate_tau_exceptional(&mut e, 2, true).unwrap();
        let rows = sequence_rows(&a, &seqs);
        let text = serde_json::to_string(&rows).unwrap();
        let back: Vec<SequenceRow> = serde_json::from_str(&text).unwrap();
        assert_eq!(rows, back);
        assert_eq!(sequence_table(&a, &seqs).lines().count(), 10);
    }
}
