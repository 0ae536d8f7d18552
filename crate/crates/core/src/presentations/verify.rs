use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::coeff::{fmt_rational, Coefficient, ConjugationSpec, MultiPoly};
use crate::curves::{self, curve_var_names, LegendreCurve};
use crate::ideal::{
    bounded_membership, involution_stability, presentations_equivalent, Equivalence, MembershipVerdict, Presentation,
};
use crate::ncpoly::{NcPoly, Word};
use crate::parser::print_expr;
use crate::report::{
    describe_membership, membership_verdict, CertificateJson, CurveJson, Step, Verdict, VerificationReport,
};

use super::{
    alpha_of, commutators_with_generators, cuntz_krieger_involution, cuntz_krieger_with_entries, ideal_i0, ideal_j0,
    ideal_omega0, lemma2_back_substitution, lemma2_solve, omega_central, similarity_check, similarity_matrices,
    sklyanin, sklyanin_relations, specialized_matrix, standard_alphabet, standard_involution, symbolic_conjugation,
    Matrix2, PresentationError, SklyaninParams, ALPHA, B, BETA, GAMMA,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Claim {
    Lemma1,
    Lemma2,
    Lemma4,
    Lemma5,
    Theorem1,
    Corollary1,
}

impl Claim {
    pub const ALL: [Claim; 6] = [
        Claim::Lemma1,
        Claim::Lemma2,
        Claim::Lemma4,
        Claim::Lemma5,
        Claim::Theorem1,
        Claim::Corollary1,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Claim::Lemma1 => "lemma1",
            Claim::Lemma2 => "lemma2",
            Claim::Lemma4 => "lemma4",
            Claim::Lemma5 => "lemma5",
            Claim::Theorem1 => "theorem1",
            Claim::Corollary1 => "corollary1",
        }
    }
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Claim {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Claim::ALL
            .into_iter()
            .find(|c| c.id().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown claim '{s}'"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Concrete(i64),
    Symbolic,
}

impl Mode {
    fn b(self) -> Coefficient {
        match self {
            Mode::Concrete(b) => Coefficient::from_int(b),
            Mode::Symbolic => Coefficient::param(B),
        }
    }

    fn name(self) -> &'static str {
        match self {
            Mode::Concrete(_) => "concrete",
            Mode::Symbolic => "symbolic",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClaimOptions {
    /// Bound on `|left| + |right|` for inhomogeneous membership searches.
    pub wrapper_len: usize,
    pub certificates: bool,
    pub timing: bool,
}

impl Default for ClaimOptions {
    fn default() -> Self {
        ClaimOptions {
            wrapper_len: 2,
            certificates: false,
            timing: false,
        }
    }
}

struct Ctx {
    opts: ClaimOptions,
    steps: Vec<Step>,
    observations: Vec<Step>,
    curve: Option<CurveJson>,
}

fn show(p: &NcPoly) -> String {
    print_expr(p, &standard_alphabet())
}

fn show_c(c: &Coefficient) -> String {
    c.fmt_with(standard_alphabet().params())
}

/// Verifies one claim. Errors only on invalid input (`b < 2`).
pub fn verify(claim: Claim, mode: Mode, opts: ClaimOptions) -> Result<VerificationReport, PresentationError> {
    if let Mode::Concrete(b) = mode {
        if b < 2 {
            return Err(PresentationError::BOutOfRange(b));
        }
    }
    let start = Instant::now();
    let mut ctx = Ctx {
        opts,
        steps: Vec::new(),
        observations: Vec::new(),
        curve: None,
    };
    match claim {
        Claim::Lemma1 => lemma1(&mut ctx, mode)?,
        Claim::Lemma2 => lemma2(&mut ctx, mode)?,
        Claim::Lemma4 => lemma4(&mut ctx, mode)?,
        Claim::Lemma5 => lemma5(&mut ctx, mode)?,
        Claim::Theorem1 => theorem1(&mut ctx, mode, false)?,
        Claim::Corollary1 => theorem1(&mut ctx, mode, true)?,
    }
    let verdict = Verdict::combine(ctx.steps.iter().map(|s| s.verdict));
    Ok(VerificationReport {
        claim: claim.id().to_string(),
        mode: mode.name().to_string(),
        b: match mode {
            Mode::Concrete(b) => Some(b),
            Mode::Symbolic => None,
        },
        wrapper_len: opts.wrapper_len,
        verdict,
        steps: ctx.steps,
        curve: ctx.curve,
        observations: ctx.observations,
        elapsed_ms: opts.timing.then(|| start.elapsed().as_millis() as u64),
    })
}

const PAIR_NAMES: [&str; 3] = ["first", "middle", "last"];

fn yes_no(b: bool) -> &'static str {
    if b {
        "stable"
    } else {
        "unstable"
    }
}

/// Stability of each relation pair inside the full six-relation ideal.
fn pair_stability(
    params: &SklyaninParams,
    conj: ConjugationSpec,
    wrapper_len: usize,
) -> Result<[bool; 3], PresentationError> {
    let p = Presentation::new(
        standard_alphabet(),
        sklyanin_relations(params),
        cuntz_krieger_involution(conj),
    )?;
    let rep = involution_stability(&p, wrapper_len);
    let member = |i: usize| rep.relations[i].verdict.is_member();
    Ok([0, 1, 2].map(|k| member(2 * k) && member(2 * k + 1)))
}

fn lemma1(ctx: &mut Ctx, mode: Mode) -> Result<(), PresentationError> {
    let (a, b, g) = (
        Coefficient::param(ALPHA),
        Coefficient::param(BETA),
        Coefficient::param(GAMMA),
    );
    let one = Coefficient::one();
    let m1 = Coefficient::from_int(-1);
    let free = symbolic_conjugation();
    let all_real = free.make_real(ALPHA).make_real(BETA).make_real(GAMMA);
    let configs: Vec<(&str, SklyaninParams, ConjugationSpec, [bool; 3])> = vec![
        (
            "independent conjugates",
            SklyaninParams::unconstrained(a.clone(), b.clone(), g.clone()),
            free.clone(),
            [false, false, false],
        ),
        (
            "alpha real",
            SklyaninParams::unconstrained(a.clone(), b.clone(), g.clone()),
            free.make_real(ALPHA),
            [true, false, false],
        ),
        (
            "alpha, beta, gamma real",
            SklyaninParams::unconstrained(a.clone(), b.clone(), g.clone()),
            all_real.clone(),
            [true, false, false],
        ),
        (
            "beta = 1",
            SklyaninParams::unconstrained(a.clone(), one.clone(), g.clone()),
            free.clone(),
            [false, true, false],
        ),
        (
            "beta = -1",
            SklyaninParams::unconstrained(a.clone(), m1.clone(), g.clone()),
            free.clone(),
            [false, false, false],
        ),
        (
            "gamma = -1",
            SklyaninParams::unconstrained(a.clone(), b.clone(), m1.clone()),
            free.clone(),
            [false, false, true],
        ),
        (
            "gamma = 1",
            SklyaninParams::unconstrained(a.clone(), b.clone(), one.clone()),
            free.clone(),
            [false, false, false],
        ),
        (
            "alpha real, beta = 1, gamma = -1",
            SklyaninParams::new(a.clone(), one.clone(), m1.clone())?,
            free.make_real(ALPHA),
            [true, true, true],
        ),
    ];
    for (name, params, conj, expected) in configs {
        let got = pair_stability(&params, conj, ctx.opts.wrapper_len)?;
        let fmt = |s: [bool; 3]| {
            (0..3)
                .map(|k| format!("{} {}", PAIR_NAMES[k], yes_no(s[k])))
                .collect::<Vec<_>>()
                .join(", ")
        };
        let detail = if got == expected {
            fmt(got)
        } else {
            format!("{}; expected {}", fmt(got), fmt(expected))
        };
        ctx.steps
            .push(Step::check(format!("pair stability: {name}"), got == expected).detail(detail));
    }
    let residual = SklyaninParams::self_adjoint(a).constraint_residual();
    ctx.steps.push(
        Step::check("(alpha, 1, -1) satisfies the parameter constraint", residual.is_zero()).detail(format!(
            "alpha + beta + gamma + alpha*beta*gamma = {}",
            show_c(&residual)
        )),
    );
    if let Mode::Concrete(bv) = mode {
        let alpha = alpha_of(&mode.b())?;
        let p = sklyanin(&SklyaninParams::new(alpha.clone(), one, m1)?)?;
        let rep = involution_stability(&p, ctx.opts.wrapper_len);
        ctx.steps.push(
            Step::check(format!("stable at b = {bv}"), rep.is_stable()).detail(format!("alpha = {}", show_c(&alpha))),
        );
    }
    Ok(())
}

fn xx(i: u8, j: u8) -> Word {
    Word::from_gens(&[i - 1, j - 1])
}

/// `x2x1 − M₁₁x1x2 − M₁₂x3x4` and `x4x3 − M₂₁x1x2 − M₂₂x3x4`.
fn solved_pair(m: &Matrix2) -> Vec<NcPoly> {
    let one = Coefficient::one();
    let row = |lhs: Word, i: usize| {
        NcPoly::from_terms([(lhs, one.clone()), (xx(1, 2), -&m.m[i][0]), (xx(3, 4), -&m.m[i][1])])
    };
    vec![row(xx(2, 1), 0), row(xx(4, 3), 1)]
}

fn span_step(ctx: &mut Ctx, name: &str, p: Vec<NcPoly>, q: Vec<NcPoly>) -> Result<(), PresentationError> {
    let alphabet = standard_alphabet();
    let pp = Presentation::new(alphabet.clone(), p.clone(), standard_involution())?;
    let qp = Presentation::new(alphabet.clone(), q.clone(), standard_involution())?;
    let rep = presentations_equivalent(&pp, &qp, ctx.opts.wrapper_len)?;
    let mut missing = Vec::new();
    for (v, r) in rep.forward.iter().zip(&p).chain(rep.backward.iter().zip(&q)) {
        if !v.is_member() {
            missing.push(format!("{} ({})", show(r), describe_membership(v, &alphabet)));
        }
    }
    let verdict = match rep.verdict() {
        Equivalence::Equivalent => Verdict::Pass,
        Equivalence::NotEquivalent => Verdict::Fail,
        Equivalence::Inconclusive => Verdict::Inconclusive,
    };
    let detail = if missing.is_empty() {
        format!(
            "{{{}}} and {{{}}} generate the same ideal",
            p.iter().map(show).collect::<Vec<_>>().join(", "),
            q.iter().map(show).collect::<Vec<_>>().join(", ")
        )
    } else {
        format!("not in the other ideal: {}", missing.join("; "))
    };
    ctx.steps.push(Step::new(name, verdict).detail(detail));
    Ok(())
}

fn lemma2(ctx: &mut Ctx, mode: Mode) -> Result<(), PresentationError> {
    let a = Coefficient::param(ALPHA);
    let one = Coefficient::one();
    let d = &one - &a;
    let expected = Matrix2::new(
        (&one + &a).checked_div(&d)?,
        (&Coefficient::from_int(-2) * &a).checked_div(&d)?,
        Coefficient::from_int(-2).checked_div(&d)?,
        (&one + &a).checked_div(&d)?,
    );
    let names = standard_alphabet();
    let m = lemma2_solve(&a)?;
    ctx.steps
        .push(Step::check("solve for x2*x1, x4*x3", m == expected).detail(m.fmt_with(names.params())));
    let residues = lemma2_back_substitution(&a, &m);
    ctx.steps.push(
        Step::check("back-substitution gives zero", residues.iter().all(|r| r.is_zero()))
            .detail(residues.iter().map(show).collect::<Vec<_>>().join(", ")),
    );
    let b = mode.b();
    let alpha_b = alpha_of(&b)?;
    let mb = lemma2_solve(&alpha_b)?;
    let specialized = specialized_matrix(&b);
    ctx.steps.push(
        Step::check("specialization alpha = (b - 2)/(b + 2)", mb == specialized).detail(mb.fmt_with(names.params())),
    );
    let (s, m14, t, bm) = similarity_matrices(&b);
    let sim = similarity_check(&s, &m14, &t, &bm);
    ctx.steps.push(
        Step::check("similarity S*M*T = B with S*T = I", sim.passed()).detail(format!(
            "S*M*T = {}, S*T = I: {}, trace {} / {}, det {} / {}",
            sim.product.fmt_with(names.params()),
            sim.st_is_identity,
            show_c(&sim.traces.0),
            show_c(&sim.traces.1),
            show_c(&sim.determinants.0),
            show_c(&sim.determinants.1)
        )),
    );
    let original: Vec<NcPoly> = sklyanin_relations(&SklyaninParams::self_adjoint(alpha_b.clone()))[..2].to_vec();
    span_step(
        ctx,
        "original pair spans the solved pair",
        original.clone(),
        solved_pair(&mb),
    )?;
    let one_c = Coefficient::one();
    let two = Coefficient::from_int(2);
    let ck_pair: Vec<NcPoly> = solved_pair(&Matrix2::new(&b - &one_c, one_c.clone(), &b - &two, one_c.clone()));
    span_step(ctx, "original pair spans the Cuntz-Krieger pair", original, ck_pair)?;
    Ok(())
}

fn central_observation(ctx: &mut Ctx, name: &str, element: &NcPoly, relations: &[NcPoly]) {
    let comms = commutators_with_generators(element);
    let verdicts = crate::ideal::memberships(&comms, relations, 4, ctx.opts.wrapper_len);
    let failing: Vec<String> = verdicts
        .iter()
        .enumerate()
        .filter(|(_, v)| !v.is_member())
        .map(|(i, _)| format!("x{}", i + 1))
        .collect();
    let verdict = Verdict::combine(verdicts.iter().map(membership_verdict));
    let detail = if failing.is_empty() {
        format!("{} commutes with every generator modulo the relations", show(element))
    } else {
        format!(
            "{} does not commute with {} modulo the relations",
            show(element),
            failing.join(", ")
        )
    };
    ctx.observations.push(Step::new(name, verdict).detail(detail));
}

fn lemma4(ctx: &mut Ctx, mode: Mode) -> Result<(), PresentationError> {
    let alpha = match mode {
        Mode::Concrete(_) => alpha_of(&mode.b())?,
        Mode::Symbolic => Coefficient::param(ALPHA),
    };
    let om = ideal_omega0();
    let inv = standard_involution();
    let swapped = om[0].involute(&inv) == om[1] && om[1].involute(&inv) == om[0];
    ctx.steps.push(
        Step::check("involution swaps the two generators", swapped).detail(format!(
            "{} <-> {}",
            show(&om[0]),
            show(&om[1])
        )),
    );
    let p = Presentation::new(standard_alphabet(), om.clone(), inv)?;
    let st = involution_stability(&p, ctx.opts.wrapper_len);
    ctx.steps
        .push(Step::check("ideal stable under the involution", st.is_stable()));
    let params = SklyaninParams::new(alpha.clone(), Coefficient::one(), Coefficient::from_int(-1))?;
    let [o1, o2] = omega_central(&params)?;
    let c44 = o2.coeff(&xx(4, 4));
    ctx.steps.push(
        Step::check("x4^2 coefficient of the second central element vanishes", c44.is_zero())
            .detail(format!("second element is {}", show(&o2))),
    );
    span_step(
        ctx,
        "central elements span the same ideal",
        vec![o1.clone(), o2.clone()],
        om.clone(),
    )?;

    let rels = sklyanin_relations(&params);
    central_observation(ctx, "first central element is central", &o1, &rels);
    central_observation(ctx, "second central element is central", &o2, &rels);
    let sq = |i: u8| NcPoly::word(&[i - 1, i - 1]);
    let k1 = &(&(&sq(2) + &sq(3)) + &sq(4)) - &sq(1);
    let k2 = &sq(3) + &sq(4);
    central_observation(ctx, "-x1^2 + x2^2 + x3^2 + x4^2 is central", &k1, &rels);
    central_observation(ctx, "x3^2 + x4^2 is central", &k2, &rels);
    Ok(())
}

fn curve_json(c: &LegendreCurve, names: &[String]) -> CurveJson {
    CurveJson {
        lambda: c.lambda.fmt_with(names),
        equation: curves::projective_equation_string(&c.lambda),
        discriminant: c.discriminant.fmt_with(names),
        j: c.j_invariant.as_ref().map(|j| j.fmt_with(names)),
        singular: c.singular,
    }
}

fn rat_str(r: &BigRational) -> String {
    fmt_rational(r)
}

fn lemma5(ctx: &mut Ctx, mode: Mode) -> Result<(), PresentationError> {
    let alpha = match mode {
        Mode::Concrete(b) => MultiPoly::constant(
            curves::lambda_for_b(b)
                .map_err(|_| PresentationError::BOutOfRange(b))?
                .as_rational()
                .expect("rational"),
        ),
        Mode::Symbolic => curves::symbolic_alpha(),
    };
    let names = curve_var_names();
    let squares = curves::verify_eq20_step(&alpha).expect("quadrics use only even powers");
    let one = Coefficient::one();
    let zero = Coefficient::zero();
    let want = [Some(vec![one.clone(), one.clone()]), Some(vec![zero, one])];
    let coords_ok = squares.coordinates == want && squares.passed();
    let fmt_coords = |c: &Option<Vec<Coefficient>>| match c {
        Some(v) => format!(
            "({})",
            v.iter().map(|x| x.fmt_with(&names)).collect::<Vec<_>>().join(", ")
        ),
        None => "not in span".to_string(),
    };
    ctx.steps.push(
        Step::check("square substitution maps the quadrics onto the target pair", coords_ok).detail(format!(
            "{} -> {}; {} -> {}",
            squares.images[0].fmt_with(&names),
            fmt_coords(&squares.coordinates[0]),
            squares.images[1].fmt_with(&names),
            fmt_coords(&squares.coordinates[1])
        )),
    );
    let param = curves::verify_eq22_step(&alpha);
    ctx.steps.push(
        Step::check("polynomial parametrization gives the cubic", param.passed()).detail(format!(
            "residues {} and {}; factors 4*alpha and 4",
            param.residue_first.fmt_with(&names),
            param.residue_second.fmt_with(&names)
        )),
    );
    let sh = curves::shift_and_homogenize(&alpha);
    ctx.steps.push(
        Step::check("shift x -> x - 1 gives the Legendre form", sh.shift_residue.is_zero())
            .detail(curves::legendre_affine(&alpha).fmt_with(&names)),
    );
    ctx.steps.push(
        Step::check(
            "homogenization gives y^2*z - x*(x - z)*(x - alpha*z)",
            sh.homogenize_residue.is_zero() && sh.dehomogenize_residue.is_zero() && sh.projective_degree == Some(3),
        )
        .detail(curves::legendre_projective(&alpha).fmt_with(&names)),
    );
    if let Mode::Concrete(b) = mode {
        let c = curves::curve_for_b(b).map_err(|_| PresentationError::BOutOfRange(b))?;
        let lam = c.lambda.as_rational().expect("rational");
        let hyp = lam != BigRational::from_integer(0.into()) && lam != BigRational::from_integer(1.into());
        ctx.observations
            .push(Step::check("hypothesis alpha not in {0, 1}", hyp).detail(format!("alpha = {}", rat_str(&lam))));
        ctx.curve = Some(curve_json(&c, &[]));
    }
    Ok(())
}

fn labels(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

struct Side {
    name: &'static str,
    presentation: Presentation,
    labels: Vec<String>,
}

fn membership_steps(ctx: &mut Ctx, from: &Side, to: &Side, verdicts: &[MembershipVerdict]) {
    let alphabet = standard_alphabet();
    for ((label, rel), v) in from.labels.iter().zip(from.presentation.relations()).zip(verdicts) {
        let mut verdict = membership_verdict(v);
        let mut detail = format!("{} : {}", show(rel), describe_membership(v, &alphabet));
        let mut certificate = None;
        if let Some(cert) = v.certificate() {
            if !cert.verify(rel, to.presentation.relations()) {
                verdict = Verdict::Fail;
                detail.push_str(" (certificate does not re-expand)");
            }
            if ctx.opts.certificates {
                certificate = Some(CertificateJson::new(cert, rel, to.presentation.relations(), &alphabet));
            }
        }
        let mut step = Step::new(format!("{label} in the {} ideal", to.name), verdict).detail(detail);
        step.certificate = certificate;
        ctx.steps.push(step);
    }
}

fn stability_step(ctx: &mut Ctx, name: &str, rels: Vec<NcPoly>) -> Result<(), PresentationError> {
    let p = Presentation::new(standard_alphabet(), rels, standard_involution())?;
    let rep = involution_stability(&p, ctx.opts.wrapper_len);
    let verdict = Verdict::combine(rep.relations.iter().map(|r| membership_verdict(&r.verdict)));
    let detail = if rep.is_stable() {
        "every relation maps into the ideal".to_string()
    } else {
        let bad: Vec<String> = rep
            .relations
            .iter()
            .filter(|r| !r.verdict.is_member())
            .map(|r| format!("{} -> {}", show(&p.relations()[r.index]), show(&r.image)))
            .collect();
        format!("images outside the ideal: {}", bad.join("; "))
    };
    ctx.steps.push(Step::new(name, verdict).detail(detail));
    Ok(())
}

/// Integer `b >= 2` at which some certificate coefficient has a pole.
fn certificate_poles(verdicts: &[&MembershipVerdict]) -> (Vec<BigRational>, bool) {
    let mut dens: Vec<MultiPoly> = Vec::new();
    for v in verdicts {
        if let Some(c) = v.certificate() {
            for t in &c.terms {
                let d = t.coefficient.denom();
                if !d.is_constant() && !dens.contains(d) {
                    dens.push(d.clone());
                }
            }
        }
    }
    let mut roots = Vec::new();
    let mut complete = true;
    for d in &dens {
        match d.as_univariate().and_then(|(_, dense)| curves::rational_roots(&dense)) {
            Some(rs) => roots.extend(rs.into_iter().map(|(r, _)| r)),
            None => complete = false,
        }
    }
    roots.sort();
    roots.dedup();
    (roots, complete)
}

fn theorem1(ctx: &mut Ctx, mode: Mode, with_omega: bool) -> Result<(), PresentationError> {
    let b = mode.b();
    let alpha = alpha_of(&b)?;
    let params = SklyaninParams::new(alpha.clone(), Coefficient::one(), Coefficient::from_int(-1))?;
    ctx.steps.push(
        Step::check(
            "Sklyanin parameters satisfy the constraint",
            params.constraint_residual().is_zero(),
        )
        .detail(format!("alpha = {}", show_c(&alpha))),
    );
    stability_step(
        ctx,
        "Sklyanin relations stable under the involution",
        sklyanin_relations(&params),
    )?;
    stability_step(ctx, "I0 stable under the involution", ideal_i0())?;
    stability_step(ctx, "J0 stable under the involution", ideal_j0())?;
    if with_omega {
        stability_step(ctx, "Omega0 stable under the involution", ideal_omega0())?;
    }

    let entries = [
        &b - &Coefficient::one(),
        Coefficient::one(),
        &b - &Coefficient::from_int(2),
        Coefficient::one(),
    ];
    let mut s_rels = sklyanin_relations(&params);
    s_rels.extend(ideal_i0());
    let mut s_labels = labels("S", 6);
    s_labels.push("I0".into());
    let mut c_rels = cuntz_krieger_with_entries(&entries)?.relations().to_vec();
    c_rels.extend(ideal_j0());
    let mut c_labels = labels("C", 3);
    c_labels.extend(labels("J0.", 4));
    if with_omega {
        for (i, o) in ideal_omega0().into_iter().enumerate() {
            s_rels.push(o.clone());
            c_rels.push(o);
            s_labels.push(format!("Omega0.{}", i + 1));
            c_labels.push(format!("Omega0.{}", i + 1));
        }
    }
    let alphabet = standard_alphabet();
    let s = Side {
        name: "Sklyanin",
        presentation: Presentation::new(alphabet.clone(), s_rels, standard_involution())?,
        labels: s_labels,
    };
    let c = Side {
        name: "Cuntz-Krieger",
        presentation: Presentation::new(alphabet.clone(), c_rels, standard_involution())?,
        labels: c_labels,
    };
    let rep = presentations_equivalent(&s.presentation, &c.presentation, ctx.opts.wrapper_len)?;
    membership_steps(ctx, &s, &c, &rep.forward);
    membership_steps(ctx, &c, &s, &rep.backward);

    for side in [&s, &c] {
        let v = bounded_membership(&NcPoly::one(), side.presentation.relations(), 4, ctx.opts.wrapper_len);
        let detail = if v.is_member() {
            "the quotient algebra is zero".to_string()
        } else {
            describe_membership(&v, &alphabet)
        };
        ctx.observations
            .push(Step::new(format!("1 in the {} ideal", side.name), membership_verdict(&v)).detail(detail));
    }

    if mode == Mode::Symbolic {
        let all: Vec<&MembershipVerdict> = rep.forward.iter().chain(rep.backward.iter()).collect();
        let (roots, complete) = certificate_poles(&all);
        let bad: Vec<String> = roots
            .iter()
            .filter(|r| r.is_integer() && r.to_integer().to_i64().is_some_and(|v| v >= 2))
            .map(rat_str)
            .collect();
        let detail = format!(
            "rational poles of certificate coefficients: {}",
            if roots.is_empty() {
                "none".to_string()
            } else {
                roots.iter().map(rat_str).collect::<Vec<_>>().join(", ")
            }
        );
        let verdict = if !complete {
            Verdict::Inconclusive
        } else {
            Verdict::from_bool(bad.is_empty())
        };
        ctx.observations
            .push(Step::new("certificates specialize to every integer b >= 2", verdict).detail(detail));
    }

    if with_omega {
        match mode {
            Mode::Concrete(bv) => {
                let curve = curves::curve_for_b(bv).map_err(|_| PresentationError::BOutOfRange(bv))?;
                ctx.steps.push(
                    Step::check("curve singular exactly when b = 2", curve.singular == (bv == 2))
                        .detail(if curve.singular { "SINGULAR" } else { "non-singular" }),
                );
                ctx.curve = Some(curve_json(&curve, &[]));
            }
            Mode::Symbolic => {
                let (delta, roots) = curves::singular_locus_in_b();
                let names = standard_alphabet().params().to_vec();
                let only_two = roots.len() == 1 && roots[0].0 == BigRational::from_integer(2.into());
                ctx.steps.push(
                    Step::check("discriminant vanishes only at b = 2", only_two).detail(format!(
                        "discriminant(lambda(b)) = {}; roots {}",
                        delta.fmt_with(&names),
                        roots
                            .iter()
                            .map(|(r, m)| format!("{} (multiplicity {m})", rat_str(r)))
                            .collect::<Vec<_>>()
                            .join(", ")
                    )),
                );
                let lam = curves::legendre_invariants(&alpha);
                let mut cj = curve_json(&lam, &names);
                cj.equation = format!("y^2*z - x*(x - z)*(x - ({})*z)", show_c(&alpha));
                ctx.curve = Some(cj);
            }
        }
    }
    Ok(())
}
