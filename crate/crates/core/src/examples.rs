//! Builders for the standard test instances and their deliberate mutants.
//!
//! * [`group_algebra`]: `K[ℤ/n]` with trivial reassociator.
//! * [`twisted_group_algebra`]: `K_ω[ℤ/n]`, twisted by the standard 3-cocycle
//!   `ω(a,b,c) = ζ^{a⌊(b+c)/n⌋}`. The builder validates its own output.
//! * [`sweedler_h4`]: Sweedler's 4-dimensional Hopf algebra, antipode of order 4.
//! * [`mutate`]: perturbs individual structure constants, without validation.

use thiserror::Error;

use crate::algebra::{check_level, AlgebraInstance, HopfData, InstanceParts, Level, Report};
use crate::scalars::{Field, FieldSpec, Rational};
use crate::tensors::{LinMap, SparseTensor};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExampleError<K: Field> {
    #[error("generated instance fails its checks")]
    ChecksFailed(Report<K>),
    #[error("characteristic {0} is not supported by this builder")]
    UnsupportedCharacteristic(u64),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("unknown mutation target `{0}`")]
    UnknownTarget(String),
}

/// `ℤ/n` together with a chosen `ζ` satisfying `ζ^n = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicGroupSpec<K> {
    order: usize,
    field: FieldSpec,
    zeta: K,
}

impl<K: Field> CyclicGroupSpec<K> {
    pub fn new(order: usize, field: FieldSpec, zeta: K) -> Result<Self, ExampleError<K>> {
        K::supports(&field).map_err(|e| ExampleError::InvalidParameters(e.to_string()))?;
        if order == 0 {
            return Err(ExampleError::InvalidParameters("group order must be at least 1".into()));
        }
        if zeta.pow(order as u64) != K::one_in(&field) {
            return Err(ExampleError::InvalidParameters(format!("zeta = {zeta} is not an {order}-th root of unity")));
        }
        Ok(Self { order, field, zeta })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn zeta(&self) -> &K {
        &self.zeta
    }
}

fn group_labels(n: usize) -> Vec<String> {
    (0..n)
        .map(|k| match k {
            0 => "e".to_string(),
            1 => "g".to_string(),
            k => format!("g{k}"),
        })
        .collect()
}

/// `K[ℤ/n]`: grouplike basis, group multiplication, `φ = ε⊗ε⊗ε` written out,
/// `S(g) = g⁻¹`, `α = β = ε`, every basis element declared grouplike.
pub fn group_algebra<K: Field>(order: usize, field: FieldSpec) -> AlgebraInstance<K> {
    assert!(order >= 1, "group order must be at least 1");
    let n = order;
    let one = K::one_in(&field);
    let mut p = InstanceParts::<K>::empty(field, group_labels(n));
    p.unit.add_entry(vec![0], one.clone());
    let mut antipode = LinMap::zero(vec![n], vec![n]);
    let mut eps = SparseTensor::functional(vec![n]);
    for a in 0..n {
        eps.add_entry(vec![a], one.clone());
        p.comult.add_entry(&[a], &[a, a], one.clone());
        antipode.add_entry(&[a], &[(n - a) % n], one.clone());
        for b in 0..n {
            p.mult.add_entry(&[a, b], &[(a + b) % n], one.clone());
            for c in 0..n {
                p.phi.add_entry(vec![a, b, c], one.clone());
            }
        }
        p.grouplikes.push(SparseTensor::basis(n, a));
    }
    p.counit = eps.clone();
    p.hopf = Some(HopfData {
        antipode,
        alpha: eps.clone(),
        beta: eps,
    });
    AlgebraInstance::from_parts(p).expect("group algebra dims are consistent")
}

/// The normalized 3-cocycle `ω(a,b,c) = ζ^{a·⌊(b+c)/n⌋}` on `ℤ/n`.
#[derive(Debug, Clone)]
pub struct StandardCocycle<K> {
    order: usize,
    powers: Vec<K>,
}

impl<K: Field> StandardCocycle<K> {
    pub fn value(&self, a: usize, b: usize, c: usize) -> K {
        let n = self.order;
        let exp = (a % n) * ((b % n + c % n) / n);
        self.powers[exp % n].clone()
    }

    pub fn order(&self) -> usize {
        self.order
    }
}

pub fn standard_cocycle<K: Field>(order: usize, zeta: &K) -> StandardCocycle<K> {
    let mut powers = Vec::with_capacity(order);
    let mut acc = K::one();
    for _ in 0..order {
        powers.push(acc.clone());
        acc = acc * zeta;
    }
    StandardCocycle { order, powers }
}

/// `K_ω[ℤ/n]` with `φ = ω`, `α = ε`, `β(g^a) = ω(a, −a, a)⁻¹`.
///
/// The result is run through the full axiom check and returned only if it passes.
pub fn twisted_group_algebra<K: Field>(spec: &CyclicGroupSpec<K>) -> Result<AlgebraInstance<K>, ExampleError<K>> {
    let n = spec.order;
    let omega = standard_cocycle(n, &spec.zeta);
    let mut p = group_algebra::<K>(n, spec.field).into_parts();
    let mut phi = SparseTensor::functional(vec![n, n, n]);
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                phi.add_entry(vec![a, b, c], omega.value(a, b, c));
            }
        }
    }
    p.phi = phi;
    let mut beta = SparseTensor::functional(vec![n]);
    for a in 0..n {
        let w = omega.value(a, (n - a) % n, a);
        let inv = w
            .try_inv()
            .map_err(|e| ExampleError::InvalidParameters(format!("cocycle value not invertible: {e}")))?;
        beta.add_entry(vec![a], inv);
    }
    p.hopf.as_mut().expect("group algebra has antipode").beta = beta;
    let h = AlgebraInstance::from_parts(p).expect("dims unchanged");
    let report = check_level(&h, Level::Hopf).expect("antipode data present");
    if report.passed() {
        Ok(h)
    } else {
        Err(ExampleError::ChecksFailed(report))
    }
}

/// Sweedler's Hopf algebra with basis `1, g, x, gx`:
/// `g² = 1`, `x² = 0`, `xg = −gx`, `Δ(x) = x⊗1 + g⊗x`, `S(x) = −gx`.
pub fn sweedler_h4<K: Field>(field: FieldSpec) -> Result<AlgebraInstance<K>, ExampleError<K>> {
    if field.characteristic() == 2 {
        return Err(ExampleError::UnsupportedCharacteristic(2));
    }
    let labels = ["1", "g", "x", "gx"].map(String::from).to_vec();
    let (one, g, x, gx) = (0, 1, 2, 3);
    let c = |v: i64| K::from_i64_in(&field, v);
    let mut p = InstanceParts::<K>::empty(field, labels);
    p.unit.add_entry(vec![one], c(1));
    p.counit.add_entry(vec![one], c(1));
    p.counit.add_entry(vec![g], c(1));

    let table: [(usize, usize, usize, i64); 10] = [
        (g, g, one, 1),
        (g, x, gx, 1),
        (g, gx, x, 1),
        (x, g, gx, -1),
        (gx, g, x, -1),
        (one, one, one, 1),
        (one, g, g, 1),
        (one, x, x, 1),
        (one, gx, gx, 1),
        (g, one, g, 1),
    ];
    for (a, b, r, v) in table {
        p.mult.add_entry(&[a, b], &[r], c(v));
    }
    for (a, r) in [(x, x), (gx, gx)] {
        p.mult.add_entry(&[a, one], &[r], c(1));
    }
    // x·x = x·gx = gx·x = gx·gx = 0

    p.comult.add_entry(&[one], &[one, one], c(1));
    p.comult.add_entry(&[g], &[g, g], c(1));
    p.comult.add_entry(&[x], &[x, one], c(1));
    p.comult.add_entry(&[x], &[g, x], c(1));
    p.comult.add_entry(&[gx], &[gx, g], c(1));
    p.comult.add_entry(&[gx], &[one, gx], c(1));

    for a in [one, g] {
        for b in [one, g] {
            for d in [one, g] {
                p.phi.add_entry(vec![a, b, d], c(1));
            }
        }
    }

    let mut antipode = LinMap::zero(vec![4], vec![4]);
    antipode.add_entry(&[one], &[one], c(1));
    antipode.add_entry(&[g], &[g], c(1));
    antipode.add_entry(&[x], &[gx], c(-1));
    antipode.add_entry(&[gx], &[x], c(1));
    p.hopf = Some(HopfData {
        antipode,
        alpha: p.counit.clone(),
        beta: p.counit.clone(),
    });
    p.grouplikes = vec![SparseTensor::basis(4, one), SparseTensor::basis(4, g)];
    Ok(AlgebraInstance::from_parts(p).expect("H4 dims are consistent"))
}

/// Additive perturbation of one structure tensor.
///
/// `edits` are `(index tuple, delta)` pairs; for maps the tuple lists the
/// source indices followed by the target indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mutation {
    pub target: String,
    pub edits: Vec<(Vec<usize>, i64)>,
}

impl Mutation {
    pub fn new(target: impl Into<String>, edits: Vec<(Vec<usize>, i64)>) -> Self {
        Self {
            target: target.into(),
            edits,
        }
    }

    /// On `K[ℤ/2]`: `φ(g^a,g^b,g^c) = (−1)^{ab}`, which is not a 3-cocycle.
    pub fn non_cocycle_z2() -> Self {
        Self::new("phi", vec![(vec![1, 1, 0], -2), (vec![1, 1, 1], -2)])
    }

    /// On `K_ω[ℤ/2]`: `φ(g,g,g)` flipped from −1 to +1.
    pub fn flip_phi_ggg() -> Self {
        Self::new("phi", vec![(vec![1, 1, 1], 2)])
    }

    /// On `H4`: `Δ(x) = x⊗1 + x⊗g` instead of `x⊗1 + g⊗x`.
    pub fn corrupt_h4_comult() -> Self {
        Self::new("comult", vec![(vec![2, 1, 2], -1), (vec![2, 2, 1], 1)])
    }

    /// On `K_ω[ℤ/2]`: `β = ε`.
    pub fn beta_eps_on_twist() -> Self {
        Self::new("beta", vec![(vec![1], 2)])
    }
}

pub fn mutate<K: Field>(h: &AlgebraInstance<K>, m: &Mutation) -> Result<AlgebraInstance<K>, ExampleError<K>> {
    let field = h.field();
    let edits = m
        .edits
        .iter()
        .map(|(idx, d)| (idx.clone(), K::from_i64_in(&field, *d)))
        .collect();
    mutate_entries(h, &m.target, edits)
}

/// Like [`mutate`], with deltas given as field elements.
pub fn mutate_entries<K: Field>(
    h: &AlgebraInstance<K>,
    target: &str,
    edits: Vec<(Vec<usize>, K)>,
) -> Result<AlgebraInstance<K>, ExampleError<K>> {
    let mut p = h.clone().into_parts();
    let unknown = || ExampleError::UnknownTarget(target.to_string());
    let tensor: &mut SparseTensor<K> = match target {
        "comult" => p.comult.tensor_mut(),
        "mult" => p.mult.tensor_mut(),
        "counit" => &mut p.counit,
        "unit" => &mut p.unit,
        "phi" => &mut p.phi,
        "antipode" => p.hopf.as_mut().ok_or_else(unknown)?.antipode.tensor_mut(),
        "alpha" => &mut p.hopf.as_mut().ok_or_else(unknown)?.alpha,
        "beta" => &mut p.hopf.as_mut().ok_or_else(unknown)?.beta,
        _ => return Err(unknown()),
    };
    for (idx, delta) in edits {
        if idx.len() != tensor.arity() || idx.iter().zip(tensor.dims()).any(|(i, d)| i >= d) {
            return Err(ExampleError::InvalidParameters(format!("index {idx:?} out of range for {target}")));
        }
        tensor.add_entry(idx, delta);
    }
    Ok(AlgebraInstance::from_parts(p).expect("mutation keeps dims"))
}

/// A deliberately broken instance together with the check expected to fail first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CataloguedMutant {
    pub name: &'static str,
    pub instance: AlgebraInstance<Rational>,
    pub failing_check: &'static str,
}

/// The fixed negative-test catalogue, all over `ℚ`.
pub fn mutant_catalogue() -> Vec<CataloguedMutant> {
    let q = FieldSpec::Rationals;
    let kz2 = group_algebra::<Rational>(2, q);
    let minus_one = Rational::from_i64_in(&q, -1);
    let kw2 = twisted_group_algebra(&CyclicGroupSpec::new(2, q, minus_one).expect("-1 squares to 1"))
        .expect("standard twist passes");
    let h4 = sweedler_h4::<Rational>(q).expect("characteristic 0");
    let entry = |name, base: &AlgebraInstance<Rational>, m: Mutation, failing_check| CataloguedMutant {
        name,
        instance: mutate(base, &m).expect("known target"),
        failing_check,
    };
    vec![
        entry("noncocycle", &kz2, Mutation::non_cocycle_z2(), "e3"),
        entry("twist-flipped", &kw2, Mutation::flip_phi_ggg(), "e6a"),
        entry("h4-bad-comult", &h4, Mutation::corrupt_h4_comult(), "coassoc"),
        entry("twist-beta-eps", &kw2, Mutation::beta_eps_on_twist(), "e6a"),
    ]
}

/// Every `(target, index, value)` structure constant of `h`, in a fixed order.
pub fn structure_constants<K: Field>(h: &AlgebraInstance<K>) -> Vec<(&'static str, Vec<usize>, K)> {
    let mut out = Vec::new();
    let mut push = |name: &'static str, t: &SparseTensor<K>| {
        for (k, v) in t.iter() {
            out.push((name, k.to_vec(), v.clone()));
        }
    };
    push("comult", h.comult().tensor());
    push("counit", h.counit());
    push("mult", h.mult().tensor());
    push("unit", h.unit());
    push("phi", h.phi());
    if let Some(hd) = h.hopf() {
        push("antipode", hd.antipode.tensor());
        push("alpha", &hd.alpha);
        push("beta", &hd.beta);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::serialize_instance;
    use crate::scalars::Fp;

    fn q(v: i64) -> Rational {
        Rational::from_i64_in(&FieldSpec::Rationals, v)
    }

    const F7: FieldSpec = FieldSpec::PrimeField(7);

    #[test]
    fn cocycle_values() {
        let w = standard_cocycle(2, &q(-1));
        assert_eq!(w.value(1, 1, 1), q(-1));
        assert_eq!(w.value(1, 1, 0), q(1));
        assert_eq!(w.value(0, 1, 1), q(1));
        let w3 = standard_cocycle(3, &Fp::from_i64_in(&F7, 2));
        assert_eq!(w3.value(1, 2, 2), Fp::from_i64_in(&F7, 2));
        assert_eq!(w3.value(2, 2, 2), Fp::from_i64_in(&F7, 4));
        let w1 = standard_cocycle(1, &q(1));
        assert_eq!(w1.value(0, 0, 0), q(1));
    }

    /// Brute-force group 3-cocycle condition
    /// `ω(b,c,d) ω(a,b+c,d) ω(a,b,c) = ω(a+b,c,d) ω(a,b,c+d)`.
    fn is_group_cocycle<K: Field>(w: &StandardCocycle<K>) -> bool {
        let n = w.order();
        (0..n).all(|a| {
            (0..n).all(|b| {
                (0..n).all(|c| {
                    (0..n).all(|d| {
                        w.value(b, c, d) * w.value(a, (b + c) % n, d) * w.value(a, b, c)
                            == w.value((a + b) % n, c, d) * w.value(a, b, (c + d) % n)
                    })
                })
            })
        })
    }

    #[test]
    fn standard_cocycle_satisfies_cocycle_identity() {
        assert!(is_group_cocycle(&standard_cocycle(2, &q(-1))));
        assert!(is_group_cocycle(&standard_cocycle(3, &Fp::from_i64_in(&F7, 2))));
        assert!(is_group_cocycle(&standard_cocycle(6, &Fp::from_i64_in(&F7, 3))));
    }

    #[test]
    fn zeta_must_be_root_of_unity() {
        assert!(CyclicGroupSpec::new(2, FieldSpec::Rationals, q(2)).is_err());
        assert!(CyclicGroupSpec::new(3, F7, Fp::from_i64_in(&F7, 3)).is_err());
        assert!(CyclicGroupSpec::new(3, F7, Fp::from_i64_in(&F7, 2)).is_ok());
    }

    #[test]
    fn twisted_builders_pass() {
        let kw2 = twisted_group_algebra(&CyclicGroupSpec::new(2, FieldSpec::Rationals, q(-1)).unwrap()).unwrap();
        assert_eq!(kw2.hopf().unwrap().beta.coeff(&[1]), q(-1));
        assert_eq!(kw2.phi_at(1, 1, 1), q(-1));
        let kw3 = twisted_group_algebra(&CyclicGroupSpec::new(3, F7, Fp::from_i64_in(&F7, 2)).unwrap());
        assert!(kw3.is_ok());
    }

    #[test]
    fn trivial_twist_equals_group_algebra() {
        let spec = CyclicGroupSpec::new(2, FieldSpec::Rationals, q(1)).unwrap();
        let tw = twisted_group_algebra(&spec).unwrap();
        let g = group_algebra::<Rational>(2, FieldSpec::Rationals);
        assert_eq!(serialize_instance(&tw), serialize_instance(&g));
    }

    #[test]
    fn h4_rejects_characteristic_two() {
        assert_eq!(
            sweedler_h4::<Fp>(FieldSpec::PrimeField(2)).unwrap_err(),
            ExampleError::UnsupportedCharacteristic(2)
        );
        assert!(sweedler_h4::<Fp>(FieldSpec::PrimeField(3)).is_ok());
    }

    #[test]
    fn h4_coproduct_of_x() {
        let h = sweedler_h4::<Rational>(FieldSpec::Rationals).unwrap();
        let d1 = h.iterated_coproduct(1, 2, 1000).unwrap();
        let got: Vec<_> = d1.iter().map(|(k, v)| (k.to_vec(), v.clone())).collect();
        assert_eq!(got, vec![(vec![1, 2], q(1)), (vec![2, 0], q(1))]);
        let d2 = h.iterated_coproduct(2, 2, 1000).unwrap();
        let got: Vec<_> = d2.iter().map(|(k, _)| k.to_vec()).collect();
        // g⊗g⊗x, g⊗x⊗1, x⊗1⊗1
        assert_eq!(got, vec![vec![1, 1, 2], vec![1, 2, 0], vec![2, 0, 0]]);
    }

    #[test]
    fn identity_mutation_is_noop() {
        let h = sweedler_h4::<Rational>(FieldSpec::Rationals).unwrap();
        let m = mutate(&h, &Mutation::new("phi", vec![(vec![0, 0, 0], 0)])).unwrap();
        assert_eq!(m, h);
        assert!(matches!(
            mutate(&h, &Mutation::new("nope", vec![])),
            Err(ExampleError::UnknownTarget(_))
        ));
        assert!(mutate(&h, &Mutation::new("phi", vec![(vec![9, 0, 0], 1)])).is_err());
    }

    #[test]
    fn catalogue_mutants_fail_where_documented() {
        for m in mutant_catalogue() {
            let r = check_level(&m.instance, Level::Hopf).unwrap();
            let first = r.first_failure().unwrap_or_else(|| panic!("{} passes", m.name));
            assert_eq!(first.name, m.failing_check, "{}", m.name);
        }
    }

    #[test]
    fn one_dimensional_group_algebra() {
        let h = group_algebra::<Rational>(1, FieldSpec::Rationals);
        assert_eq!(h.dim(), 1);
        assert!(check_level(&h, Level::Hopf).unwrap().passed());
    }

    #[test]
    fn group_algebra_over_f7() {
        let h = group_algebra::<Fp>(3, F7);
        assert!(check_level(&h, Level::Hopf).unwrap().passed());
    }
}
