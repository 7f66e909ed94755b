//! The τ-cluster morphism category as a finite concrete category, the functor
//! induced by `Λ ⊗_{kQ} −`, factorizations, and export.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::sync::Arc;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::algebra::{opposite_arc, Algebra};
use crate::error::{Error, Result};
use crate::sequences::{induce_object, object_name, psi_at};
use crate::wide::{w_right_keys, Key, WideEngine};

#[derive(Clone, Debug)]
pub struct ClusterObject {
    pub key: Key,
    /// Engine level used to index morphisms out of this object.
    pub level: usize,
    pub label: String,
    pub simple_dims: Vec<Vec<usize>>,
}

/// `g_U^W : W → J_W(U)`.
#[derive(Clone, Debug)]
pub struct Morphism {
    pub source: usize,
    pub target: usize,
    /// Catalog indices of `U` at the source's level, sorted.
    pub clique: Vec<usize>,
    pub label: String,
}

#[derive(Clone, Debug)]
pub struct ClusterCategory {
    pub objects: Vec<ClusterObject>,
    pub morphisms: Vec<Morphism>,
    pub identities: Vec<usize>,
    /// `(g, f) ↦ g ∘ f` for composable pairs.
    pub composition: HashMap<(usize, usize), usize>,
    by_clique: HashMap<(usize, Vec<usize>), usize>,
}

impl ClusterCategory {
    pub fn hom(&self, a: usize, b: usize) -> Vec<usize> {
        self.morphisms
            .iter()
            .positions(|m| m.source == a && m.target == b)
            .collect()
    }

    pub fn compose(&self, g: usize, f: usize) -> Option<usize> {
        self.composition.get(&(g, f)).copied()
    }

    pub fn object_by_label(&self, label: &str) -> Option<usize> {
        self.objects.iter().position(|o| o.label == label)
    }

    /// Unit and associativity laws on every composable pair and triple.
    pub fn check_laws(&self) -> Result<()> {
        for (i, m) in self.morphisms.iter().enumerate() {
            if self.compose(i, self.identities[m.source]) != Some(i)
                || self.compose(self.identities[m.target], i) != Some(i)
            {
                return Err(Error::Verification(format!(
                    "unit law fails at {}",
                    m.label
                )));
            }
        }
        for (f, mf) in self.morphisms.iter().enumerate() {
            for g in self.morphisms.iter().positions(|m| m.source == mf.target) {
                let gf = self
                    .compose(g, f)
                    .ok_or_else(|| Error::Verification(format!("{g} ∘ {f} is missing")))?;
                for h in self
                    .morphisms
                    .iter()
                    .positions(|m| m.source == self.morphisms[g].target)
                {
                    let left = self.compose(h, gf);
                    let right = self.compose(h, g).and_then(|hg| self.compose(hg, f));
                    if left.is_none() || left != right {
                        return Err(Error::Verification(format!(
                            "associativity fails at ({h}, {g}, {f})"
                        )));
                    }
                }
            }
        }
        for (i, o) in self.objects.iter().enumerate() {
            if self.hom(i, i) != vec![self.identities[i]] {
                return Err(Error::Verification(format!(
                    "End({}) is not trivial",
                    o.label
                )));
            }
        }
        Ok(())
    }

    /// Node order for export: more simples first, then key.
    pub fn node_order(&self) -> Vec<usize> {
        (0..self.objects.len())
            .sorted_by(|&a, &b| {
                let (x, y) = (&self.objects[a], &self.objects[b]);
                y.key
                    .len()
                    .cmp(&x.key.len())
                    .then_with(|| x.key.cmp(&y.key))
            })
            .collect()
    }
}

fn clique_label(engine: &WideEngine, level: usize, clique: &[usize]) -> Result<String> {
    if clique.is_empty() {
        return Ok("0".into());
    }
    let alg = engine.algebra().clone();
    Ok(clique
        .iter()
        .map(|&i| {
            engine
                .level(level)
                .ambient_object(i)
                .map(|o| object_name(&alg, &o))
        })
        .collect::<Result<Vec<_>>>()?
        .join(" ⊕ "))
}

/// Objects are the distinct `J_W(U)` reachable from the ambient category; morphisms
/// out of `W` are indexed by basic support τ-rigid objects of `C(W)`.
pub fn build_category(engine: &mut WideEngine) -> Result<ClusterCategory> {
    let top_key = engine.key(0)?;
    let mut objects = vec![ClusterObject {
        key: top_key,
        level: 0,
        label: "mod".into(),
        simple_dims: engine
            .simples(0)?
            .iter()
            .map(|s| s.dims().to_vec())
            .collect(),
    }];
    let mut morphisms: Vec<Morphism> = Vec::new();
    let mut by_clique = HashMap::new();
    let mut obj_of_key: HashMap<Key, usize> = HashMap::new();
    obj_of_key.insert(objects[0].key.clone(), 0);
    let mut next = 0;
    while next < objects.len() {
        let src = next;
        next += 1;
        let level = objects[src].level;
        let n = engine.level(level).alg.n_vertices();
        for clique in engine.level(level).catalog.cliques(n) {
            let child = engine.child(level, &clique)?;
            let key = engine.key(child)?;
            let tgt = match obj_of_key.get(&key) {
                Some(&t) => t,
                None => {
                    let label = if key.is_empty() {
                        "0".to_string()
                    } else {
                        format!("J({})", clique_label(engine, level, &clique)?)
                    };
                    let simple_dims = engine
                        .simples(child)?
                        .iter()
                        .map(|s| s.dims().to_vec())
                        .collect();
                    objects.push(ClusterObject {
                        key: key.clone(),
                        level: child,
                        label,
                        simple_dims,
                    });
                    obj_of_key.insert(key, objects.len() - 1);
                    objects.len() - 1
                }
            };
            let label = clique_label(engine, level, &clique)?;
            by_clique.insert((src, clique.clone()), morphisms.len());
            morphisms.push(Morphism {
                source: src,
                target: tgt,
                clique,
                label,
            });
        }
    }
    let identities: Vec<usize> = (0..objects.len())
        .map(|o| by_clique[&(o, Vec::new())])
        .collect();
    let mut composition = HashMap::new();
    for (f, mf) in morphisms.iter().enumerate() {
        let l1 = objects[mf.source].level;
        let child = engine.child(l1, &mf.clique)?;
        let l2 = objects[mf.target].level;
        for (g, mg) in morphisms
            .iter()
            .enumerate()
            .filter(|(_, m)| m.source == mf.target)
        {
            // g_V ∘ g_U = g_{U ⊕ ε_U^{-1}(V)}
            let mut total = mf.clique.clone();
            for &v in &mg.clique {
                let moved = engine.transport(l2, v, child)?;
                total.push(engine.epsilon_inverse(l1, &mf.clique, moved)?);
            }
            total.sort_unstable();
            let gf = *by_clique.get(&(mf.source, total.clone())).ok_or_else(|| {
                Error::Verification(format!("composite clique {total:?} is not a morphism"))
            })?;
            if morphisms[gf].target != mg.target {
                return Err(Error::Verification(format!(
                    "{} ∘ {} lands in the wrong object",
                    mg.label, mf.label
                )));
            }
            composition.insert((g, f), gf);
        }
    }
    Ok(ClusterCategory {
        objects,
        morphisms,
        identities,
        composition,
        by_clique,
    })
}

/// Object and morphism maps of `Λ ⊗_{kQ} −` between two built categories.
#[derive(Clone, Debug, Serialize)]
pub struct ClusterFunctor {
    pub objects: Vec<usize>,
    pub morphisms: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FunctorReport {
    pub objects: (usize, usize),
    pub morphisms: (usize, usize),
    pub objects_bijective: bool,
    pub hom_bijective: bool,
    pub preserves_identities: bool,
    pub preserves_composition: bool,
}

impl FunctorReport {
    pub fn ok(&self) -> bool {
        self.objects_bijective
            && self.hom_bijective
            && self.preserves_identities
            && self.preserves_composition
    }
}

/// Builds `F` on morphisms by inducing the defining objects, then on objects as targets.
/// `kq` must be built on the base algebra of `lam`'s algebra.
pub fn build_functor(
    kq: &mut WideEngine,
    kq_cat: &ClusterCategory,
    lam: &mut WideEngine,
    lam_cat: &ClusterCategory,
) -> Result<(ClusterFunctor, FunctorReport)> {
    let lam_alg = lam.algebra().clone();
    let mut obj_map: Vec<Option<usize>> = vec![None; kq_cat.objects.len()];
    obj_map[0] = Some(0);
    let mut mor_map = vec![usize::MAX; kq_cat.morphisms.len()];
    // objects are discovered in breadth-first order, so sources are mapped before use
    for (i, m) in kq_cat.morphisms.iter().enumerate() {
        let src_up = obj_map[m.source]
            .ok_or_else(|| Error::Verification(format!("source of {} is unmapped", m.label)))?;
        let down_level = kq_cat.objects[m.source].level;
        let up_level = lam_cat.objects[src_up].level;
        let mut clique = Vec::with_capacity(m.clique.len());
        for &c in &m.clique {
            let o = induce_object(&lam_alg, &kq.level(down_level).ambient_object(c)?)?;
            clique.push(lam.level(up_level).locate(&o)?);
        }
        clique.sort_unstable();
        let j = *lam_cat
            .by_clique
            .get(&(src_up, clique))
            .ok_or_else(|| Error::Verification(format!("induced {} is not a morphism", m.label)))?;
        mor_map[i] = j;
        let tgt_up = lam_cat.morphisms[j].target;
        match obj_map[m.target] {
            None => obj_map[m.target] = Some(tgt_up),
            Some(t) if t != tgt_up => {
                return Err(Error::Verification(format!(
                    "object {} has two images",
                    kq_cat.objects[m.target].label
                )));
            }
            Some(_) => {}
        }
    }
    let objects: Vec<usize> = obj_map
        .into_iter()
        .map(|o| o.expect("every object is a target"))
        .collect();
    let objects_bijective = objects.iter().all_unique() && objects.len() == lam_cat.objects.len();
    let mut hom_bijective = mor_map.iter().all_unique() && mor_map.len() == lam_cat.morphisms.len();
    for a in 0..kq_cat.objects.len() {
        for b in 0..kq_cat.objects.len() {
            let down = kq_cat.hom(a, b);
            let up = lam_cat.hom(objects[a], objects[b]);
            let mut image: Vec<usize> = down.iter().map(|&m| mor_map[m]).collect();
            image.sort_unstable();
            hom_bijective &= image == up;
        }
    }
    let preserves_identities = (0..kq_cat.objects.len())
        .all(|o| mor_map[kq_cat.identities[o]] == lam_cat.identities[objects[o]]);
    let preserves_composition = kq_cat
        .composition
        .iter()
        .all(|(&(g, f), &gf)| lam_cat.compose(mor_map[g], mor_map[f]) == Some(mor_map[gf]));
    let report = FunctorReport {
        objects: (kq_cat.objects.len(), lam_cat.objects.len()),
        morphisms: (kq_cat.morphisms.len(), lam_cat.morphisms.len()),
        objects_bijective,
        hom_bijective,
        preserves_identities,
        preserves_composition,
    };
    Ok((
        ClusterFunctor {
            objects,
            morphisms: mor_map,
        },
        report,
    ))
}

/// Factorizations of `g` into irreducible morphisms, one per ordering of its defining object,
/// listed first-applied first.
pub fn factorizations(
    engine: &mut WideEngine,
    cat: &ClusterCategory,
    g: usize,
) -> Result<Vec<Vec<usize>>> {
    let m = &cat.morphisms[g];
    let t = m.clique.len();
    let level = cat.objects[m.source].level;
    let obj_of_key: HashMap<&Key, usize> = cat
        .objects
        .iter()
        .enumerate()
        .map(|(i, o)| (&o.key, i))
        .collect();
    let mut out = Vec::new();
    for order in m.clique.iter().copied().permutations(t) {
        let s = psi_at(engine, level, &order)?;
        let mut chain = Vec::with_capacity(t);
        let mut composite = cat.identities[m.source];
        for i in (0..t).rev() {
            let key = engine.key(s.levels[i])?;
            let obj = *obj_of_key
                .get(&key)
                .ok_or_else(|| Error::Verification("factor source is not an object".into()))?;
            let idx = engine.transport(s.levels[i], s.indices[i], cat.objects[obj].level)?;
            let step = *cat
                .by_clique
                .get(&(obj, vec![idx]))
                .ok_or_else(|| Error::Verification("factor is not a morphism".into()))?;
            composite = cat
                .compose(step, composite)
                .ok_or_else(|| Error::Verification("factors do not compose".into()))?;
            chain.push(step);
        }
        if composite != g {
            return Err(Error::Verification(format!(
                "factorization of {} composes to {}",
                m.label, cat.morphisms[composite].label
            )));
        }
        out.push(chain);
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct ConjectureReport {
    pub perpendicular: Vec<Key>,
    pub left_finite: Vec<Key>,
    pub right_finite: Vec<Key>,
}

impl ConjectureReport {
    pub fn coincide(&self) -> bool {
        self.perpendicular == self.left_finite && self.left_finite == self.right_finite
    }
}

/// τ-perpendicular, left finite and right finite wide subcategories, as key sets.
pub fn conjecture_check(alg: &Arc<Algebra>) -> Result<ConjectureReport> {
    let mut engine = WideEngine::new(alg)?;
    let n = alg.n_vertices();
    let mut perpendicular = Vec::new();
    for c in engine.level(0).catalog.cliques(n) {
        let l = engine.child(0, &c)?;
        perpendicular.push(engine.key(l)?);
    }
    let mut left_finite = Vec::new();
    for t in engine.level(0).catalog.support_tau_tilting() {
        let l = engine.w_left(&t)?;
        left_finite.push(engine.key(l)?);
    }
    let mut op = WideEngine::new(&opposite_arc(alg))?;
    let right_finite = w_right_keys(&mut engine, &mut op)?;
    for v in [&mut perpendicular, &mut left_finite] {
        v.sort();
        v.dedup();
    }
    Ok(ConjectureReport {
        perpendicular,
        left_finite,
        right_finite,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObjectData {
    pub id: usize,
    pub label: String,
    pub simple_dims: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismData {
    pub id: usize,
    pub source: usize,
    pub target: usize,
    pub label: String,
    pub size: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CategoryData {
    pub objects: Vec<ObjectData>,
    pub morphisms: Vec<MorphismData>,
    /// `(g, f, g ∘ f)`.
    pub composition: Vec<(usize, usize, usize)>,
}

/// Renumbers objects by node order; morphisms keep source-major order.
pub fn to_data(cat: &ClusterCategory) -> CategoryData {
    let order = cat.node_order();
    let new_id: BTreeMap<usize, usize> = order.iter().enumerate().map(|(i, &o)| (o, i)).collect();
    let objects = order
        .iter()
        .enumerate()
        .map(|(i, &o)| ObjectData {
            id: i,
            label: cat.objects[o].label.clone(),
            simple_dims: cat.objects[o].simple_dims.clone(),
        })
        .collect();
    let morph_order: Vec<usize> = (0..cat.morphisms.len())
        .sorted_by_key(|&m| {
            (
                new_id[&cat.morphisms[m].source],
                new_id[&cat.morphisms[m].target],
                m,
            )
        })
        .collect();
    let new_m: BTreeMap<usize, usize> = morph_order
        .iter()
        .enumerate()
        .map(|(i, &m)| (m, i))
        .collect();
    let morphisms = morph_order
        .iter()
        .enumerate()
        .map(|(i, &m)| {
            let mm = &cat.morphisms[m];
            MorphismData {
                id: i,
                source: new_id[&mm.source],
                target: new_id[&mm.target],
                label: mm.label.clone(),
                size: mm.clique.len(),
            }
        })
        .collect();
    let composition = cat
        .composition
        .iter()
        .map(|(&(g, f), &gf)| (new_m[&g], new_m[&f], new_m[&gf]))
        .sorted()
        .collect();
    CategoryData {
        objects,
        morphisms,
        composition,
    }
}

pub fn export_json(cat: &ClusterCategory) -> String {
    serde_json::to_string_pretty(&to_data(cat)).expect("category data serializes")
}

pub fn parse_json(text: &str) -> Result<CategoryData> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

/// Digraph of the irreducible morphisms.
pub fn export_dot(cat: &ClusterCategory) -> String {
    let data = to_data(cat);
    let mut s = String::from("digraph cluster_morphisms {\n");
    for o in &data.objects {
        let _ = writeln!(s, "  n{} [label=\"{}\", shape=box];", o.id, o.label);
    }
    for m in data.morphisms.iter().filter(|m| m.size == 1) {
        let _ = writeln!(
            s,
            "  n{} -> n{} [label=\"{}\"];",
            m.source, m.target, m.label
        );
    }
    s.push_str("}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::sequences::enumerate_tau_exceptional;

    fn arc(a: Algebra) -> Arc<Algebra> {
        Arc::new(a)
    }

    #[test]
    fn a2_category() {
        let a = arc(fixtures::a2());
        let mut e = WideEngine::new(&a).unwrap();
        let cat = build_category(&mut e).unwrap();
        assert_eq!(cat.objects.len(), 5);
        assert_eq!(cat.morphisms.len(), 5 + 5 + 6 + 5);
        cat.check_laws().unwrap();
        let zero = cat.object_by_label("0").unwrap();
        assert_eq!(cat.hom(0, zero).len(), 5);
        assert_eq!(cat.hom(0, 0).len(), 1);
        let top_out = cat.morphisms.iter().filter(|m| m.source == 0).count();
        assert_eq!(top_out, e.level(0).catalog.cliques(2).len());
    }

    #[test]
    fn hom_implies_containment() {
        let a = arc(fixtures::a3());
        let mut e = WideEngine::new(&a).unwrap();
        let cat = build_category(&mut e).unwrap();
        cat.check_laws().unwrap();
        for m in &cat.morphisms {
            let src = e.level(cat.objects[m.source].level).clone();
            for s in e.simples(cat.objects[m.target].level).unwrap() {
                assert!(src.from_ambient(&s).is_ok());
            }
        }
    }

    #[test]
    fn example_seven_category_and_functor() {
        let lam = arc(fixtures::example7());
        let base = lam.provenance().unwrap().base.clone();
        let mut up = WideEngine::new(&lam).unwrap();
        let cat = build_category(&mut up).unwrap();
        cat.check_laws().unwrap();
        assert_eq!(cat.objects.len(), 5);
        let labels: Vec<&str> = cat
            .objects
            .iter()
            .map(|o| o.label.as_str())
            .sorted()
            .collect();
        assert_eq!(labels, vec!["0", "J(I1)", "J(P1)", "J(P2)", "mod"]);
        let j = |l: &str| cat.object_by_label(l).unwrap();
        let zero = j("0");
        assert_eq!(cat.hom(0, j("J(I1)")).len(), 1);
        assert_eq!(cat.hom(0, zero).len(), 5);
        let arrows = |a: usize, b: usize| -> Vec<String> {
            cat.hom(a, b)
                .iter()
                .map(|&m| cat.morphisms[m].label.clone())
                .sorted()
                .collect()
        };
        assert_eq!(arrows(0, j("J(P1)")), vec!["P1", "P1[1]"]);
        assert_eq!(arrows(0, j("J(I1)")), vec!["I1"]);
        assert_eq!(arrows(0, j("J(P2)")), vec!["P2", "P2[1]"]);
        assert_eq!(arrows(j("J(P1)"), zero), vec!["P2", "P2[1]"]);
        assert_eq!(arrows(j("J(I1)"), zero), vec!["P1", "P1[1]"]);
        assert_eq!(arrows(j("J(P2)"), zero), vec!["I1", "I1[1]"]);

        let mut down = WideEngine::new(&base).unwrap();
        let kq_cat = build_category(&mut down).unwrap();
        let (f, report) = build_functor(&mut down, &kq_cat, &mut up, &cat).unwrap();
        assert!(report.ok(), "{report:?}");
        assert_eq!(report.objects, (5, 5));
        let s1 = kq_cat
            .morphisms
            .iter()
            .position(|m| m.source == 0 && m.label == "S1")
            .unwrap();
        assert_eq!(cat.morphisms[f.morphisms[s1]].label, "I1");
        for g in 0..kq_cat.morphisms.len() {
            let a = factorizations(&mut down, &kq_cat, g).unwrap().len();
            let b = factorizations(&mut up, &cat, f.morphisms[g]).unwrap().len();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn factorization_counts() {
        let a = arc(fixtures::a2());
        let mut e = WideEngine::new(&a).unwrap();
        let cat = build_category(&mut e).unwrap();
        assert_eq!(
            factorizations(&mut e, &cat, cat.identities[0]).unwrap(),
            vec![Vec::<usize>::new()]
        );
        let g = cat
            .morphisms
            .iter()
            .position(|m| m.source == 0 && m.label == "S1 ⊕ P1")
            .unwrap();
        assert_eq!(factorizations(&mut e, &cat, g).unwrap().len(), 2);
        let complete: usize = cat
            .hom(0, cat.object_by_label("0").unwrap())
            .iter()
            .map(|&g| factorizations(&mut e, &cat, g).unwrap().len())
            .sum();
        assert_eq!(
            complete,
            enumerate_tau_exceptional(&mut e, 2, true).unwrap().len()
        );
    }

    #[test]
    fn conjecture_key_sets() {
        for (alg, count) in [
            (arc(fixtures::a1()), 2),
            (arc(fixtures::a2()), 5),
            (arc(fixtures::example7()), 5),
        ] {
            let r = conjecture_check(&alg).unwrap();
            assert!(r.coincide(), "{r:?}");
            assert_eq!(r.perpendicular.len(), count);
        }
    }

    #[test]
    fn exports() {
        let a = arc(fixtures::a1());
        let mut e = WideEngine::new(&a).unwrap();
        let cat = build_category(&mut e).unwrap();
        let dot = export_dot(&cat);
        assert_eq!(dot.matches("shape=box").count(), 2);
        assert_eq!(dot.matches("->").count(), 2);
        assert!(dot.contains("label=\"P1\"") && dot.contains("label=\"P1[1]\""));
        let lam = arc(fixtures::example7());
        let mut up = WideEngine::new(&lam).unwrap();
        let cat = build_category(&mut up).unwrap();
        let text = export_json(&cat);
        assert_eq!(parse_json(&text).unwrap(), to_data(&cat));
        assert_eq!(export_dot(&cat).matches("->").count(), 11);
        assert_eq!(export_json(&cat), text);
    }
}
