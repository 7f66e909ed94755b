use std::collections::BTreeSet;
use std::sync::Arc;

use serde_json::{json, Value};

use tautilt::algebra::Algebra;
use tautilt::cluster::{build_category, build_functor, conjecture_check};
use tautilt::error::{Error, Result};
use tautilt::fixtures;
use tautilt::homology::{ext_dim, g_vector, pd_capped, tau, Pd};
use tautilt::rep::{induction, is_isomorphic, Representation};
use tautilt::sequences::{induce_object, verify_sequence_bijection};
use tautilt::tau::{bongartz, co_bongartz, indec_tau_rigid, SupportTauRigidObject, TauCatalog};
use tautilt::wide::{gamma_report, jasso_reduction, local_algebra_isomorphism, WideEngine};

use crate::Report;

struct Suite {
    lines: Vec<(String, bool, String)>,
}

impl Suite {
    fn new() -> Self {
        Suite { lines: Vec::new() }
    }

    fn add(&mut self, name: &str, pass: bool, detail: String) {
        self.lines.push((name.to_string(), pass, detail));
    }

    fn report(self) -> Report {
        let pass = self.lines.iter().all(|l| l.1);
        let table = self
            .lines
            .iter()
            .map(|(n, p, d)| format!("{} {n}: {d}\n", if *p { "PASS" } else { "FAIL" }))
            .collect();
        let json = Value::Array(self.lines.iter().map(|(n, p, d)| json!({"check": n, "pass": p, "detail": d})).collect());
        Report { table, json, dot: None, pass }
    }
}

fn tensor_parts(alg: &Arc<Algebra>) -> Result<Arc<Algebra>> {
    Ok(alg.provenance().ok_or_else(|| Error::Provenance("expected an algebra of the form R ⊗ kQ".into()))?.base.clone())
}

/// Support τ-tilting objects downstairs, induced, as sorted index sets of the upstairs catalog.
fn stt_bijection(base: &Arc<Algebra>, lam: &Arc<Algebra>) -> Result<(usize, usize, bool)> {
    let down = TauCatalog::for_algebra(base)?;
    let up = TauCatalog::for_algebra(lam)?;
    let down_stt = down.support_tau_tilting();
    let up_sets: BTreeSet<Vec<usize>> = up.support_tau_tilting().iter().map(|u| sorted(up.indices(u))).collect::<Result<_>>()?;
    let mut images = BTreeSet::new();
    for t in &down_stt {
        let objs = t.summands(base).iter().map(|o| induce_object(lam, o)).collect::<Result<Vec<_>>>()?;
        images.insert(sorted(up.indices(&SupportTauRigidObject::from_summands(&objs)?))?);
    }
    Ok((down_stt.len(), up_sets.len(), images.len() == down_stt.len() && images == up_sets))
}

fn sorted(v: Result<Vec<usize>>) -> Result<Vec<usize>> {
    let mut v = v?;
    v.sort_unstable();
    Ok(v)
}

fn tau_rigid_bijection(base: &Arc<Algebra>, lam: &Arc<Algebra>) -> Result<(usize, usize, bool)> {
    let down = indec_tau_rigid(base)?;
    let up = indec_tau_rigid(lam)?;
    let mut hit = vec![false; up.len()];
    for m in &down {
        let i = induction(lam, m)?;
        if let Some(j) = up.iter().position(|u| is_isomorphic(u, &i)) {
            hit[j] = true;
        }
    }
    Ok((down.len(), up.len(), down.len() == up.len() && hit.iter().all(|&h| h)))
}

fn functor_check(base: &Arc<Algebra>, lam: &Arc<Algebra>) -> Result<(usize, usize, bool)> {
    let mut down = WideEngine::new(base)?;
    let mut up = WideEngine::new(lam)?;
    let kq_cat = build_category(&mut down)?;
    let lam_cat = build_category(&mut up)?;
    let laws = kq_cat.check_laws().is_ok() && lam_cat.check_laws().is_ok();
    let (_, report) = build_functor(&mut down, &kq_cat, &mut up, &lam_cat)?;
    Ok((kq_cat.objects.len(), lam_cat.objects.len(), laws && report.ok()))
}

pub fn worked_example(pd_cap: usize) -> Result<Report> {
    let lam = Arc::new(fixtures::example7());
    let base = tensor_parts(&lam)?;
    let r = lam.provenance().expect("tensor fixture").local.clone();
    let mut s = Suite::new();

    let mods = indec_tau_rigid(&lam)?;
    let dims: Vec<Vec<usize>> = mods.iter().map(|m| m.dims().to_vec()).collect();
    let (_, _, tau_ok) = tau_rigid_bijection(&base, &lam)?;
    s.add("τ-rigid census", tau_ok && dims == [vec![0, 4], vec![4, 0], vec![4, 4]], format!("{} modules {dims:?}", mods.len()));

    let (d, u, ok) = stt_bijection(&base, &lam)?;
    s.add("support τ-tilting", ok && d == 5 && u == 5, format!("{d} ↦ {u}"));

    let mut kq = WideEngine::new(&base)?;
    let mut up = WideEngine::new(&lam)?;
    let rep = verify_sequence_bijection(&mut kq, &mut up, 2, true)?;
    s.add("signed τ-exceptional sequences", rep.ok() && rep.upstairs == 10, format!("{} ↦ {}", rep.downstairs, rep.upstairs));

    let mut gamma_ok = true;
    for m in &mods {
        let w = jasso_reduction(&lam, &SupportTauRigidObject { m: vec![m.clone()], p: vec![] })?;
        let g = gamma_report(&w)?;
        gamma_ok &= g.dim == 4 && g.local && g.commutative && local_algebra_isomorphism(&r, w.gamma()).is_some();
    }
    s.add("J(M) ≃ mod R", gamma_ok, format!("{} modules checked", mods.len()));

    let cat = build_category(&mut up)?;
    let j_i1 = cat.object_by_label("J(I1)");
    let zero = cat.object_by_label("0");
    let homs = (j_i1.map(|o| cat.hom(0, o).len()), zero.map(|o| cat.hom(0, o).len()));
    let (a, b, f_ok) = functor_check(&base, &lam)?;
    s.add(
        "cluster morphism category",
        cat.objects.len() == 5 && homs == (Some(1), Some(5)) && f_ok,
        format!("{} objects, |Hom(mod, J(I1))| = {:?}, |Hom(mod, 0)| = {:?}, functor {a} ↦ {b}", cat.objects.len(), homs.0, homs.1),
    );

    let down_mods = indec_tau_rigid(&base)?;
    let mut comm = true;
    for m in &down_mods {
        let im = induction(&lam, m)?;
        comm &= is_isomorphic(&tau(&im)?, &induction(&lam, &tau(m)?)?);
        comm &= g_vector(&im)? == g_vector(m)?;
        let bd: Vec<Representation> = bongartz(m)?.iter().map(|x| induction(&lam, x)).collect::<Result<_>>()?;
        let bu = bongartz(&im)?;
        comm &= bd.len() == bu.len() && bd.iter().all(|x| bu.iter().any(|y| is_isomorphic(x, y)));
        let cd = co_bongartz(m)?;
        let cu = co_bongartz(&im)?;
        comm &= cd.p == cu.p && cd.m.len() == cu.m.len();
        for x in &cd.m {
            let ix = induction(&lam, x)?;
            comm &= cu.m.iter().any(|y| is_isomorphic(&ix, y));
        }
    }
    s.add("commutation with induction", comm, format!("{} modules", down_mods.len()));

    let a3 = Arc::new(fixtures::a3_rad2());
    let s1 = Representation::simple(&a3, 0);
    let s3 = Representation::simple(&a3, 2);
    let pd = pd_capped(&s1, pd_cap)?;
    let w = jasso_reduction(&a3, &SupportTauRigidObject { m: vec![Representation::projective(&a3, 2)], p: vec![] })?;
    let pd_w = w.pd(&s1, pd_cap)?;
    let ext = ext_dim(2, &s1, &s3)?;
    let w13 = jasso_reduction(&a3, &SupportTauRigidObject { m: vec![Representation::projective(&a3, 1)], p: vec![] })?;
    let ext_w = w13.ext_dim(2, &s1, &s3)?;
    s.add(
        "projective dimension in a wide subcategory",
        pd == Pd::Finite(2) && pd_w == Pd::Finite(1) && ext != 0 && ext_w == 0,
        format!("pd S1 = {pd}, pd_W S1 = {pd_w}, Ext² = {ext}, Ext²_W = {ext_w}"),
    );

    let c = conjecture_check(&lam)?;
    s.add("wide subcategory key sets", c.coincide() && c.perpendicular.len() == 5, format!("{} keys", c.perpendicular.len()));
    Ok(s.report())
}

pub fn bijections(lam: &Arc<Algebra>) -> Result<Report> {
    let base = tensor_parts(lam)?;
    let n = lam.n_vertices();
    let mut s = Suite::new();
    let (d, u, ok) = tau_rigid_bijection(&base, lam)?;
    s.add("indecomposable τ-rigid", ok, format!("{d} ↦ {u}"));
    let (d, u, ok) = stt_bijection(&base, lam)?;
    s.add("support τ-tilting", ok, format!("{d} ↦ {u}"));
    let mut kq = WideEngine::new(&base)?;
    let mut up = WideEngine::new(lam)?;
    let rep = verify_sequence_bijection(&mut kq, &mut up, n, true)?;
    s.add("signed τ-exceptional sequences", rep.ok(), format!("{} ↦ {}", rep.downstairs, rep.upstairs));
    let rep = verify_sequence_bijection(&mut kq, &mut up, n, false)?;
    s.add("τ-exceptional sequences", rep.ok(), format!("{} ↦ {}", rep.downstairs, rep.upstairs));
    let (a, b, ok) = functor_check(&base, lam)?;
    s.add("cluster morphism categories", ok, format!("{a} ↦ {b} objects"));
    Ok(s.report())
}
