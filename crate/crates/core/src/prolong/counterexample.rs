use crate::basefield::{OperatorSpec, RationalFunction};
use crate::groebner::{eliminate, groebner, Budget, GroebnerBasis, IdealPresentation, Witness, WitnessRef, WitnessStep};
use crate::polyring::{Field, Poly, PolyRing, Rational, TermOrder};

type P = Poly<RationalFunction>;

/// The ideal `a = (v·∂₁x + 1, ∂₂x)` over `ℚ(u,v)` with `∂₁ = d/du`, `∂₂ = d/dv`.
///
/// `a` meets `K[x]` in zero, so the closure hypothesis holds for each derivation
/// separately, yet its prolongation by both derivations contains 1. Keeping only
/// `∂₁` gives a proper ideal with an explicit K-point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    /// Variables `x, x_1, x_2, x_11, x_12, x_22`, coefficients in `ℚ(u,v)`.
    pub ring: PolyRing,
    pub a: Vec<(String, P)>,
    /// For each derivation: whether `∂_k(a ∩ K[x]) ⊂ a`.
    pub closure: Vec<(String, bool)>,
    /// The prolongation `b = (a, ∂₁a, ∂₂a)` as a labelled derivation of 1.
    pub witness: Witness<RationalFunction>,
    pub basis_of_b: GroebnerBasis<RationalFunction>,
    /// `(a, ∂₁a)` and its reduced basis.
    pub slice: Vec<(String, P)>,
    pub slice_basis: GroebnerBasis<RationalFunction>,
    /// A zero of the slice: values of the six variables.
    pub slice_point: Vec<RationalFunction>,
}

impl Counterexample {
    pub fn trivial(&self) -> bool {
        self.basis_of_b.is_trivial()
    }

    /// Whether every slice generator vanishes at [`Counterexample::slice_point`].
    pub fn slice_point_ok(&self) -> bool {
        self.slice.iter().all(|(_, g)| {
            g.eval_with(
                RationalFunction::zero(),
                RationalFunction::one(),
                |c| c.clone(),
                |v| self.slice_point[v].clone(),
                |a, b| a.add(b),
                |a, b| a.mul(b),
            )
            .is_zero()
        })
    }
}

const X: usize = 0;
const X1: usize = 1;
const X2: usize = 2;
const X11: usize = 3;
const X12: usize = 4;
const X22: usize = 5;

/// `∂_k` on polynomials of order ≤ 1: the coefficient derivation plus the chain rule
/// through `x ↦ x_k`, `x_j ↦ x_jk`.
fn formal_d(ring: &PolyRing, op: &OperatorSpec, k: usize, p: &P) -> P {
    let images: [(usize, usize); 3] = if k == 1 {
        [(X, X1), (X1, X11), (X2, X12)]
    } else {
        [(X, X2), (X1, X12), (X2, X22)]
    };
    let mut out = p.map_coeffs(|c| op.apply(c).expect("polynomial coefficients"));
    for (v, img) in images {
        out = &out + &(&p.derivative(v) * &ring.var(img));
    }
    out
}

pub fn counterexample_two_derivations() -> Counterexample {
    let names = ["x", "x_1", "x_2", "x_11", "x_12", "x_22"].map(String::from).to_vec();
    let ring = PolyRing::new(names, vec!["u".into(), "v".into()], TermOrder::Grevlex).expect("valid ring");
    let d1 = OperatorSpec::derivation("∂1", vec![RationalFunction::one(), RationalFunction::zero()]);
    let d2 = OperatorSpec::derivation("∂2", vec![RationalFunction::zero(), RationalFunction::one()]);
    let v = RationalFunction::var(1);
    let kv = |c: &RationalFunction| ring.constant(c.clone());

    let g1 = &(&kv(&v) * &ring.var(X1)) + &ring.one();
    let g2: P = ring.var(X2);
    let a = vec![("g1".to_string(), g1.clone()), ("g2".to_string(), g2.clone())];

    let budget = Budget::default();
    let a_gb = groebner(&IdealPresentation::new(ring.clone(), vec![g1.clone(), g2.clone()]), &budget)
        .expect("small ideal");
    let lower = eliminate(&a_gb.to_presentation(), &[X], &budget).expect("small ideal");
    let closure = [(1, &d1), (2, &d2)]
        .into_iter()
        .map(|(k, op)| {
            let ok = lower.basis().iter().all(|g| a_gb.contains(&formal_d(&ring, op, k, g)));
            (op.id().to_string(), ok)
        })
        .collect();

    let gens: Vec<(String, P)> = vec![
        ("g1".into(), g1.clone()),
        ("g2".into(), g2.clone()),
        ("∂1 g1".into(), formal_d(&ring, &d1, 1, &g1)),
        ("∂1 g2".into(), formal_d(&ring, &d1, 1, &g2)),
        ("∂2 g1".into(), formal_d(&ring, &d2, 2, &g1)),
        ("∂2 g2".into(), formal_d(&ring, &d2, 2, &g2)),
    ];
    let one = ring.one::<RationalFunction>();
    let minus_v = kv(&v.neg());
    // ∂₂g1 = v·x_12 + x_1 and ∂₁g2 = x_12, so x_1 ∈ b, then 1 = g1 − v·x_1 ∈ b.
    let s1 = gens[4].1.clone();
    let s2 = gens[3].1.clone();
    let s3 = &s1 + &(&minus_v * &s2);
    let s4 = &g1 + &(&minus_v * &s3);
    let step = |terms: Vec<(P, WitnessRef)>, result: &P| WitnessStep {
        terms,
        result: result.clone(),
    };
    let witness = Witness {
        generators: gens.clone(),
        steps: vec![
            step(vec![(one.clone(), WitnessRef::Generator(4))], &s1),
            step(vec![(one.clone(), WitnessRef::Generator(3))], &s2),
            step(
                vec![(one.clone(), WitnessRef::Step(0)), (minus_v.clone(), WitnessRef::Step(1))],
                &s3,
            ),
            step(
                vec![(one.clone(), WitnessRef::Generator(0)), (minus_v.clone(), WitnessRef::Step(2))],
                &s4,
            ),
        ],
    };
    let basis_of_b = groebner(
        &IdealPresentation::new(ring.clone(), gens.iter().map(|g| g.1.clone()).collect()),
        &budget,
    )
    .expect("small ideal");

    let slice: Vec<(String, P)> = gens[..4].to_vec();
    let slice_basis = groebner(
        &IdealPresentation::new(ring.clone(), slice.iter().map(|g| g.1.clone()).collect()),
        &budget,
    )
    .expect("small ideal");
    // x = −u/v solves v·∂₁x + 1 = 0; ∂₂x is an independent coordinate here and is set to 0.
    let u = RationalFunction::var(0);
    let q = |n: i64| RationalFunction::from_rational(Rational::from(n));
    let slice_point = vec![
        u.neg().div(&v),
        q(-1).div(&v),
        q(0),
        q(0),
        q(0),
        q(0),
    ];

    Counterexample {
        ring,
        a,
        closure,
        witness,
        basis_of_b,
        slice,
        slice_basis,
        slice_point,
    }
}
