//! End-to-end check that the antipode is bijective, in nine ordered stages.

use std::fmt;

use crate::algebra::{check_level, AlgebraInstance, Check, Level, Report, Status, Value, Witness};
use crate::integrals::{check_ideal_property, distinguished_grouplike, is_grouplike, left_integrals, right_integrals};
use crate::scalars::{Field, Matrix};
use crate::tensors::{SparseTensor, Variance};

use super::antipode::{antipode_status, AntipodeStatus};
use super::coinner::{check_theta_lemma, matrix_check, theta_c};
use super::maps::{check_p_colinear, check_sigma_inverse, check_theta_star_colinear, map_p, map_theta_star, SigmaMap};
use super::PipelineError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StageId {
    Axioms = 1,
    SigmaInverse,
    Integrals,
    Grouplike,
    ThetaStar,
    P,
    Lemma,
    Antipode,
    Consistency,
}

impl StageId {
    pub const ALL: [StageId; 9] = [
        StageId::Axioms,
        StageId::SigmaInverse,
        StageId::Integrals,
        StageId::Grouplike,
        StageId::ThetaStar,
        StageId::P,
        StageId::Lemma,
        StageId::Antipode,
        StageId::Consistency,
    ];

    pub fn number(self) -> usize {
        self as usize
    }

    pub fn title(self) -> &'static str {
        match self {
            StageId::Axioms => "axioms",
            StageId::SigmaInverse => "sigma-inverse",
            StageId::Integrals => "integrals",
            StageId::Grouplike => "distinguished-grouplike",
            StageId::ThetaStar => "theta-star",
            StageId::P => "p-map",
            StageId::Lemma => "theta-lemma",
            StageId::Antipode => "antipode-bijective",
            StageId::Consistency => "theta-a-antipode",
        }
    }

    /// Check names reported when the stage is skipped.
    fn planned_checks(self) -> &'static [&'static str] {
        match self {
            StageId::Axioms => &["axioms"],
            StageId::SigmaInverse => &["sigma.inverse.left", "sigma.inverse.right"],
            StageId::Integrals => &["integrals.left.dim", "integrals.right.dim", "ideal.left", "ideal.right"],
            StageId::Grouplike => &["grouplike.extract", "grouplike.coproduct", "grouplike.counit", "grouplike.inverse"],
            StageId::ThetaStar => &["theta_star.rank", "theta_star.colinear"],
            StageId::P => &["p.colinear", "p.antipode", "p.rank"],
            StageId::Lemma => &["lemma"],
            StageId::Antipode => &[
                "antipode.injective",
                "antipode.surjective",
                "antipode.left_inverse",
                "antipode.two_sided",
            ],
            StageId::Consistency => &["theta_a_antipode.rank"],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stage<K> {
    pub id: StageId,
    pub report: Report<K>,
}

impl<K: Field> Stage<K> {
    pub fn status(&self) -> Status {
        let checks = self.report.checks();
        if checks.iter().any(Check::is_failure) {
            Status::Fail
        } else if !checks.is_empty() && checks.iter().all(|c| c.status == Status::Skipped) {
            Status::Skipped
        } else {
            Status::Pass
        }
    }
}

/// The nine stage reports plus the data computed along the way.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TheoremReport<K> {
    pub stages: Vec<Stage<K>>,
    pub integral: Option<SparseTensor<K>>,
    pub distinguished: Option<SparseTensor<K>>,
    pub antipode: Option<AntipodeStatus<K>>,
}

impl<K: Field> TheoremReport<K> {
    pub fn passed(&self) -> bool {
        self.stages.iter().all(|s| s.status() == Status::Pass)
    }

    pub fn stage(&self, id: StageId) -> &Stage<K> {
        &self.stages[id.number() - 1]
    }

    pub fn first_failing_stage(&self) -> Option<&Stage<K>> {
        self.stages.iter().find(|s| s.status() == Status::Fail)
    }

    /// All checks of all stages, in order.
    pub fn flatten(&self) -> Report<K> {
        let mut r = Report::new();
        for s in &self.stages {
            r.extend(s.report.clone());
        }
        r
    }

    pub fn render(&self, labels: &[String]) -> Vec<String> {
        let mut out = Vec::new();
        for s in &self.stages {
            out.push(format!("stage {} {} {}", s.id.number(), s.id.title(), s.status()));
            for line in s.report.render(labels) {
                out.push(format!("  {line}"));
            }
        }
        out
    }
}

impl fmt::Display for StageId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "stage {} {}", self.number(), self.title())
    }
}

fn skipped<K: Field>(id: StageId) -> Report<K> {
    let mut r = Report::new();
    for name in id.planned_checks() {
        r.push(Check::skipped(*name));
    }
    r
}

fn note_failure<K: Field>(name: &str, note: impl Into<String>) -> Check<K> {
    Check::fail(
        name,
        Witness {
            indices: vec![],
            lhs: Value::Note(note.into()),
            rhs: Value::Note("expected success".into()),
        },
    )
}

fn count_check<K: Field>(name: &str, got: usize, want: usize) -> Check<K> {
    Check::expect(name, got == want, Value::Count(got), Value::Count(want))
}

struct Runner<'a, K> {
    h: &'a AlgebraInstance<K>,
    ceiling: usize,
    stages: Vec<Option<Report<K>>>,
}

impl<'a, K: Field> Runner<'a, K> {
    fn ok(&self, id: StageId) -> bool {
        self.stages[id.number() - 1].as_ref().is_some_and(|r| {
            !r.checks().iter().any(Check::is_failure) && r.checks().iter().any(|c| c.status == Status::Pass)
        })
    }

    fn set(&mut self, id: StageId, r: Report<K>) {
        self.stages[id.number() - 1] = Some(r);
    }

    fn run_if(&mut self, id: StageId, deps: &[StageId], body: impl FnOnce(&Self) -> Report<K>) {
        let r = if deps.iter().all(|d| self.ok(*d)) {
            body(self)
        } else {
            skipped(id)
        };
        self.set(id, r);
    }

    fn failing(&self, name: &str, e: PipelineError) -> Report<K> {
        let mut r = Report::new();
        r.push(note_failure(name, e.to_string()));
        r
    }
}

/// Runs the full pipeline. Stages whose prerequisites failed are reported as skipped.
pub fn verify_theorem<K: Field>(h: &AlgebraInstance<K>, ceiling: usize) -> TheoremReport<K> {
    use StageId::*;
    let n = h.dim();
    let mut run = Runner {
        h,
        ceiling,
        stages: vec![None; 9],
    };

    let axioms = match check_level(h, Level::Hopf) {
        Ok(r) => r,
        Err(e) => {
            let mut r = check_level(h, Level::Bialgebra).expect("no antipode needed");
            r.push(note_failure("antipode.present", e.to_string()));
            r
        }
    };
    run.set(Axioms, axioms);

    let sigma = if run.ok(Axioms) { SigmaMap::new(h).ok() } else { None };
    run.run_if(SigmaInverse, &[Axioms], |r| match &sigma {
        Some(s) => check_sigma_inverse(r.h, s),
        None => r.failing("sigma.inverse.left", PipelineError::NotInvertible("phi".into())),
    });

    let left = left_integrals(h);
    let right = right_integrals(h);
    let integral = (left.len() == 1).then(|| left[0].clone());
    run.run_if(Integrals, &[Axioms], |r| {
        let mut rep = Report::new();
        rep.push(count_check("integrals.left.dim", left.len(), 1));
        rep.push(count_check("integrals.right.dim", right.len(), 1));
        match &integral {
            Some(t) => rep.extend(check_ideal_property(r.h, t)),
            None => {
                rep.push(Check::skipped("ideal.left"));
                rep.push(Check::skipped("ideal.right"));
            }
        }
        rep
    });

    let distinguished = match (&integral, run.ok(Integrals)) {
        (Some(t), true) => Some(distinguished_grouplike(h, t)),
        _ => None,
    };
    run.run_if(Grouplike, &[Integrals], |r| {
        let mut rep = Report::new();
        let a = match distinguished.as_ref().expect("integrals passed") {
            Ok(a) => a,
            Err(e) => {
                rep.push(note_failure("grouplike.extract", e.to_string()));
                return rep;
            }
        };
        rep.push(Check::pass("grouplike.extract"));
        let h = r.h;
        let da = h.comult().apply(a).expect("element");
        let aa = a.outer(a).expect("elements");
        rep.push(Check::expect(
            "grouplike.coproduct",
            da == aa,
            Value::Tensor(da),
            Value::Tensor(aa),
        ));
        let ea = h.eval(h.counit(), a);
        rep.push(Check::expect(
            "grouplike.counit",
            ea == h.one(),
            Value::Scalar(ea),
            Value::Scalar(h.one()),
        ));
        let sa = h.apply_antipode(a);
        let one = h.unit().clone().with_variance(Variance::Element);
        let (l, rr) = (h.mul(a, &sa), h.mul(&sa, a));
        let ok = l == one && rr == one;
        rep.push(Check::expect("grouplike.inverse", ok, Value::Tensor(l), Value::Tensor(one)));
        rep
    });
    let a = distinguished.and_then(Result::ok);

    let status = h.hopf().map(|_| antipode_status(h).expect("antipode present"));
    run.run_if(Antipode, &[Axioms], |_| {
        let st = status.as_ref().expect("axioms include antipode");
        let s = h.antipode().expect("present").to_matrix();
        let mut rep = Report::new();
        rep.push(count_check("antipode.injective", s.rank(), n));
        rep.push(count_check("antipode.surjective", s.rank(), n));
        match &st.left_inverse {
            Some(sl) => {
                rep.push(matrix_check("antipode.left_inverse", &sl.to_matrix().mul(&s).expect("square"), &Matrix::identity(n)));
                rep.push(matrix_check("antipode.two_sided", &s.mul(&sl.to_matrix()).expect("square"), &Matrix::identity(n)));
            }
            None => {
                rep.push(note_failure("antipode.left_inverse", "no left inverse"));
                rep.push(Check::skipped("antipode.two_sided"));
            }
        }
        rep
    });

    let theta = match (&sigma, &integral, run.ok(SigmaInverse) && run.ok(Integrals)) {
        (Some(s), Some(t), true) => Some(map_theta_star(h, s, t, ceiling)),
        _ => None,
    };
    run.run_if(ThetaStar, &[SigmaInverse, Integrals], |r| match theta.as_ref().expect("deps passed") {
        Ok(m) => {
            let mut rep = Report::new();
            rep.push(count_check("theta_star.rank", m.rank(), n));
            rep.push(check_theta_star_colinear(r.h, m).informational());
            rep
        }
        Err(e) => r.failing("theta_star.rank", e.clone()),
    });

    run.run_if(P, &[SigmaInverse, Grouplike, ThetaStar, Antipode], |r| {
        let sigma = sigma.as_ref().expect("sigma stage passed");
        let t = integral.as_ref().expect("integral stage passed");
        let a = a.as_ref().expect("grouplike stage passed");
        let sl = status
            .as_ref()
            .and_then(|s| s.left_inverse.as_ref())
            .expect("antipode stage passed");
        match map_p(r.h, sigma, t, sl, r.ceiling) {
            Ok(p) => {
                let s = r.h.antipode().expect("present").to_matrix();
                let theta = theta.as_ref().expect("theta stage passed").as_ref().expect("ok");
                let mut rep = Report::new();
                rep.push(check_p_colinear(r.h, &p, a));
                rep.push(matrix_check("p.antipode", &p.mul(&s).expect("square"), theta));
                rep.push(count_check("p.rank", p.rank(), n));
                rep
            }
            Err(e) => r.failing("p.colinear", e),
        }
    });

    run.run_if(Lemma, &[SigmaInverse, Grouplike], |r| {
        let sigma = sigma.as_ref().expect("sigma stage passed");
        let a = a.as_ref().expect("grouplike stage passed");
        match check_theta_lemma(r.h, sigma, a, r.ceiling) {
            Ok(rep) => rep,
            Err(e) => r.failing("lemma", e),
        }
    });

    run.run_if(Consistency, &[Grouplike, Lemma, Antipode], |r| {
        let a = a.as_ref().expect("grouplike stage passed");
        let mut rep = Report::new();
        match theta_c(r.h, a) {
            Ok(th) => {
                let s = r.h.antipode().expect("present").to_matrix();
                let composite = th.mul(&s).expect("square");
                rep.push(count_check("theta_a_antipode.rank", composite.rank(), n));
            }
            Err(e) => rep.push(note_failure("theta_a_antipode.rank", e.to_string())),
        }
        rep
    });

    let stages = StageId::ALL
        .iter()
        .zip(run.stages)
        .map(|(id, r)| Stage {
            id: *id,
            report: r.expect("every stage assigned"),
        })
        .collect();
    let a_ok = a.filter(|x| is_grouplike(h, x));
    TheoremReport {
        stages,
        integral,
        distinguished: a_ok,
        antipode: status,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples::{group_algebra, mutate, sweedler_h4, twisted_group_algebra, CyclicGroupSpec, Mutation};
    use crate::scalars::{FieldSpec, Rational};
    use crate::DEFAULT_CEILING;

    fn q(v: i64) -> Rational {
        Rational::from_i64_in(&FieldSpec::Rationals, v)
    }

    fn assert_all_pass(h: &AlgebraInstance<Rational>) {
        let t = verify_theorem(h, DEFAULT_CEILING);
        assert!(t.passed(), "{}", t.render(h.labels()).join("\n"));
    }

    #[test]
    fn main_instances_pass() {
        assert_all_pass(&group_algebra(2, FieldSpec::Rationals));
        assert_all_pass(&twisted_group_algebra(&CyclicGroupSpec::new(2, FieldSpec::Rationals, q(-1)).unwrap()).unwrap());
        assert_all_pass(&sweedler_h4(FieldSpec::Rationals).unwrap());
        assert_all_pass(&group_algebra(1, FieldSpec::Rationals));
    }

    #[test]
    fn h4_data() {
        let h = sweedler_h4::<Rational>(FieldSpec::Rationals).unwrap();
        let t = verify_theorem(&h, DEFAULT_CEILING);
        assert_eq!(t.distinguished, Some(h.basis(1)));
        assert_eq!(t.antipode.unwrap().order, Some(4));
    }

    #[test]
    fn non_cocycle_stops_after_axioms() {
        let h = mutate(&group_algebra::<Rational>(2, FieldSpec::Rationals), &Mutation::non_cocycle_z2()).unwrap();
        let t = verify_theorem(&h, DEFAULT_CEILING);
        assert!(!t.passed());
        assert_eq!(t.first_failing_stage().unwrap().id, StageId::Axioms);
        assert_eq!(t.stage(StageId::ThetaStar).status(), Status::Skipped);
    }

    #[test]
    fn missing_antipode_fails_axioms() {
        let mut p = group_algebra::<Rational>(2, FieldSpec::Rationals).into_parts();
        p.hopf = None;
        let h = AlgebraInstance::from_parts(p).unwrap();
        let t = verify_theorem(&h, DEFAULT_CEILING);
        assert_eq!(t.first_failing_stage().unwrap().id, StageId::Axioms);
        assert!(t.flatten().get("antipode.present").unwrap().is_failure());
    }
}
