//! The end-to-end pipeline: form → Jacobian pair → images of `α`, `α′` → generators.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};
use serde::Serialize;

use super::algebras::{
    disjointness_check, invariant_rank, relative_brauer_diagonal, relative_brauer_rational, AlgebraDescriptor,
    DisjointnessVerdict, PointRepr, SymbolAlgebra,
};
use super::alpha::{alpha, alpha_quadratic, alpha_rep};
use super::image::{ambient_bound, decide_pair, decide_single, twisted_part, Certainty, ImageDecision};
use super::nondiagonal::{relative_brauer_nondiagonal, twist_class, TwistData};
use crate::elliptic::{
    normalize_c, search_points, torsion_subgroup, validate_rank_doubling, Curve, FieldConfig, NormalizedCurve, Point,
    RankSource, RankVerdict, TorsionKind, DEFAULT_DENOM_BOUND, DEFAULT_SEARCH_BOUND,
};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::forms::BinaryCubicForm;
use crate::numeric::cube::{describe_vector, ClassField, CubeClass, CubeClassGroup, FieldTag};
use crate::numeric::quad::Quad;
use crate::numeric::rational::{big, fmt_rat, int, rat_sqrt, rat_squarefree_decomposition, Rat};

const OVER_Q_DIAGONAL: FieldConfig = FieldConfig { sqrt_c_in_k: false, sqrt_d_in_k: true, omega_in_k: false };
const OVER_Q_GENERAL: FieldConfig = FieldConfig { sqrt_c_in_k: false, sqrt_d_in_k: false, omega_in_k: false };
const OVER_Q_OMEGA: FieldConfig = FieldConfig { sqrt_c_in_k: true, sqrt_d_in_k: true, omega_in_k: true };

/// Element tables are listed for images of at most this dimension.
pub const ELEMENT_TABLE_MAX_DIMENSION: usize = 3;

pub const RANK_NOTE: &str = "Mordell-Weil ranks are external data and are not computed here; \
every conclusion is conditional on the supplied ranks and cross-checked against the rank laws.";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum BaseField {
    #[serde(rename = "Q")]
    Rationals,
    #[serde(rename = "Q(omega)")]
    Eisenstein,
}

#[derive(Clone, Debug)]
pub struct JobInput {
    pub base: BaseField,
    pub form: BinaryCubicForm<Rat>,
    /// Rank of `E` over the base field.
    pub rank: Option<u32>,
    /// Rank of `E` over `ℚ(ω)` for a job over `ℚ`.
    pub rank_l: Option<u32>,
    pub rank_citation: Option<String>,
    /// Points on the sixth-power-free model of the Jacobian.
    pub extra_points: Vec<(Rat, Rat)>,
    /// Points on the sixth-power-free model of the isogenous curve.
    pub extra_points_prime: Vec<(Rat, Rat)>,
    pub search_bound: u64,
    pub denom_bound: u64,
    pub invariant_primes: Vec<u64>,
}

impl JobInput {
    pub fn new(base: BaseField, form: BinaryCubicForm<Rat>) -> JobInput {
        JobInput {
            base,
            form,
            rank: None,
            rank_l: None,
            rank_citation: None,
            extra_points: Vec::new(),
            extra_points_prime: Vec::new(),
            search_bound: DEFAULT_SEARCH_BOUND,
            denom_bound: DEFAULT_DENOM_BOUND,
            invariant_primes: Vec::new(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FormSummary {
    pub text: String,
    /// `(A, B, C, D)` of `AX³ + 3BX²Y + 3CXY² + DY³`.
    pub normalized: [String; 4],
}

#[derive(Clone, Debug, Serialize)]
pub struct DiagonalSummary {
    pub a: String,
    pub b: String,
    /// `X = αU + βV`, `Y = γU + δV`.
    pub substitution: [String; 4],
    pub sqrt_discriminant: String,
}

#[derive(Clone, Debug, Serialize)]
#[serde(untagged)]
pub enum RootRepr {
    Rational(String),
    Quadratic(Quad),
}

#[derive(Clone, Debug, Serialize)]
pub struct CurveSummary {
    /// `c` of `Y² = X³ + c` for the model attached to the form.
    pub c: String,
    /// Sixth-power-free model `c = c0·w⁶`; all points below live on it.
    pub c0: String,
    pub w: String,
    pub sqrt_c0: RootRepr,
    pub torsion: TorsionKind,
    pub torsion_points: Vec<PointRepr>,
    /// Known points with `y ≥ 0`, excluding torsion.
    pub known_points: Vec<PointRepr>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ImageSummary {
    pub field: String,
    pub generators: Vec<String>,
    pub dimension: usize,
    pub order: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub upper_bound: Option<Vec<String>>,
    pub certainty: Certainty,
    /// Points whose images span the lower bound.
    pub witnesses: Vec<WitnessSummary>,
}

#[derive(Clone, Debug, Serialize)]
pub struct WitnessSummary {
    pub point: PointRepr,
    pub class: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct BrauerGroupSummary {
    pub generators: Vec<AlgebraDescriptor>,
    pub dimension: usize,
    pub order: u64,
    pub certainty: Certainty,
    pub statement: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct OverQ {
    pub im_alpha: ImageSummary,
    pub im_alpha_prime: ImageSummary,
    pub decision: ImageDecision,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub disjointness: Option<DisjointnessVerdict>,
    pub brauer: BrauerGroupSummary,
}

#[derive(Clone, Debug, Serialize)]
pub struct OverQOmega {
    pub rank: Option<u32>,
    /// Over a field with `ω` the images of `α` and `α′` coincide.
    pub im_alpha: ImageSummary,
    pub decision: ImageDecision,
    pub brauer: BrauerGroupSummary,
    /// `(a, ξ)_ω` for every nontrivial class of the image up to inverse.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub element_table: Vec<SymbolAlgebra>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RankSummary {
    pub rank: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rank_l: Option<u32>,
    pub source: RankSource,
    pub verdicts: Vec<RankVerdict>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BrauerReport {
    pub base_field: BaseField,
    pub form: FormSummary,
    pub discriminant: String,
    pub pipeline: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diagonalization: Option<DiagonalSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub twist: Option<TwistData>,
    pub jacobian: CurveSummary,
    pub isogenous: CurveSummary,
    pub rank: RankSummary,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub over_q: Option<OverQ>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub over_q_omega: Option<OverQOmega>,
    pub status: Certainty,
    pub notes: Vec<String>,
}

pub fn form_text(f: &BinaryCubicForm<Rat>) -> String {
    let monomials = ["X^3", "X^2Y", "XY^2", "Y^3"];
    let mut out = String::new();
    for (coef, mono) in f.raw().iter().zip(monomials) {
        if coef.is_zero() {
            continue;
        }
        let neg = coef.is_negative();
        let abs = fmt_rat(&coef.abs());
        let body = if abs == "1" { mono.to_string() } else { format!("{abs}{mono}") };
        if out.is_empty() {
            out = if neg { format!("-{body}") } else { body };
        } else {
            out.push_str(if neg { " - " } else { " + " });
            out.push_str(&body);
        }
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

struct CurveData {
    norm: NormalizedCurve,
    curve: Curve<Rat>,
    torsion: Vec<Point<Rat>>,
    kind: TorsionKind,
    /// Torsion first, then supplied points, then search results; all on the normalized model.
    candidates: Vec<Point<Rat>>,
}

fn curve_data(c: &Rat, extra: &[(Rat, Rat)], job: &JobInput) -> Result<CurveData> {
    let norm = normalize_c(c)?;
    let curve = norm.curve();
    let tors = torsion_subgroup(&curve.c)?;
    let mut candidates: Vec<Point<Rat>> = Vec::new();
    let mut push = |p: Point<Rat>| {
        if !p.is_infinity() && !candidates.contains(&p) {
            candidates.push(p);
        }
    };
    for p in &tors.points {
        push(p.clone());
    }
    for (x, y) in extra {
        push(curve.point(x.clone(), y.clone())?);
    }
    for p in search_points(&curve, job.search_bound, job.denom_bound)? {
        if p.coords().is_some_and(|(_, y)| !y.is_negative()) {
            push(p);
        }
    }
    Ok(CurveData { norm, curve, torsion: tors.points, kind: tors.kind, candidates })
}

fn summarize_curve(d: &CurveData, sqrt: RootRepr) -> CurveSummary {
    let known = d
        .candidates
        .iter()
        .filter(|p| !d.torsion.contains(p) && p.coords().is_some_and(|(_, y)| !y.is_negative()))
        .map(PointRepr::of)
        .collect();
    CurveSummary {
        c: fmt_rat(&d.norm.original),
        c0: d.norm.c0.to_string(),
        w: fmt_rat(&d.norm.w),
        sqrt_c0: sqrt,
        torsion: d.kind,
        torsion_points: d.torsion.iter().filter(|p| !p.is_infinity()).map(PointRepr::of).collect(),
        known_points: known,
    }
}

fn describe<F: ClassField>(c: &CubeClass<F>, show: &dyn Fn(&F) -> String) -> String {
    match &c.vector {
        Some(v) => describe_vector(v),
        None => show(&c.rep),
    }
}

/// Span of all images, with a greedy subset of points whose images already span it.
struct Images<F: ClassField> {
    lower: CubeClassGroup<F>,
    witnesses: Vec<(Point<Rat>, CubeClass<F>)>,
}

fn images<F: ClassField>(tag: FieldTag, items: Vec<(Point<Rat>, CubeClass<F>)>) -> Result<Images<F>> {
    let mut span = CubeClassGroup::trivial(tag.clone());
    let mut witnesses = Vec::new();
    for (p, c) in items {
        if !span.member(&c)? {
            witnesses.push((p, c));
            let classes: Vec<CubeClass<F>> = witnesses.iter().map(|(_, c)| c.clone()).collect();
            span = CubeClassGroup::span(tag.clone(), &classes)?;
        }
    }
    Ok(Images { lower: span, witnesses })
}

fn summarize_image<F: ClassField>(
    field: &str,
    img: &Images<F>,
    upper: Option<&CubeClassGroup<F>>,
    certainty: Certainty,
    show: &dyn Fn(&F) -> String,
) -> ImageSummary {
    ImageSummary {
        field: field.into(),
        generators: img.lower.basis.iter().map(|c| describe(c, show)).collect(),
        dimension: img.lower.dimension(),
        order: img.lower.order(),
        upper_bound: upper.map(|u| u.basis.iter().map(|c| describe(c, show)).collect()),
        certainty,
        witnesses: img
            .witnesses
            .iter()
            .map(|(p, c)| WitnessSummary { point: PointRepr::of(p), class: describe(c, show) })
            .collect(),
    }
}

fn closed<F: ClassField>(lower: &CubeClassGroup<F>, upper: &CubeClassGroup<F>) -> bool {
    lower.dimension() == upper.dimension()
}

fn group_statement(dim: usize, certainty: Certainty) -> String {
    let group = match dim {
        0 => "{0}".to_string(),
        1 => "Z/3".to_string(),
        n => format!("(Z/3)^{n}"),
    };
    match certainty {
        Certainty::Proved => format!("the relative Brauer group is {group}"),
        Certainty::Inconsistent => format!("rank data is inconsistent; the known generators give {group}"),
        _ => format!("the relative Brauer group contains {group}"),
    }
}

fn show_quad(x: &Quad) -> String {
    x.to_string()
}

fn show_rat(x: &Rat) -> String {
    fmt_rat(x)
}

/// `(m, k)` with `x = k²·m` and `k > 0`.
fn sqrt_parts(x: &Rat) -> Result<(i64, Rat)> {
    let (m, k) = rat_squarefree_decomposition(x)?;
    Ok((m, k.abs()))
}

pub fn run(job: &JobInput) -> Result<BrauerReport> {
    let f = &job.form;
    let delta = f.discriminant();
    if delta.is_zero() {
        return Err(Error::Degenerate("the form has zero discriminant".into()));
    }
    let mut notes = vec![RANK_NOTE.to_string()];
    let form = FormSummary {
        text: form_text(f),
        normalized: [fmt_rat(&f.a), fmt_rat(&f.b), fmt_rat(&f.c), fmt_rat(&f.d)],
    };
    let discriminant = fmt_rat(&delta);
    if rat_sqrt(&delta).is_some() {
        let d = if f.is_diagonal() { f.diagonalize()? } else { f.diagonalize()?.reduced()? };
        let pipeline = if f.is_diagonal() { "diagonal" } else { "diagonalized" };
        if !f.is_diagonal() {
            notes.push(format!(
                "The form is equivalent over Q to {}.",
                form_text(&BinaryCubicForm::diagonal(d.a.clone(), d.b.clone()))
            ));
        }
        let summary = (!f.is_diagonal()).then(|| DiagonalSummary {
            a: fmt_rat(&d.a),
            b: fmt_rat(&d.b),
            substitution: [&d.q.alpha, &d.q.beta, &d.q.gamma, &d.q.delta].map(fmt_rat),
            sqrt_discriminant: fmt_rat(&d.sqrt_delta),
        });
        let mut report = diagonal(job, &d.a, &d.b, notes)?;
        report.form = form;
        report.discriminant = discriminant;
        report.pipeline = pipeline.into();
        report.diagonalization = summary;
        Ok(report)
    } else {
        if job.base == BaseField::Eisenstein {
            return Err(Error::Unsupported(
                "non-square discriminant over Q(omega) needs the field Q(omega, sqrt(Delta))".into(),
            ));
        }
        let mut report = nondiagonal(job, &delta, notes)?;
        report.form = form;
        report.discriminant = discriminant;
        Ok(report)
    }
}

fn rank_summary(job: &JobInput, verdicts: Vec<RankVerdict>, deduced: Option<u32>) -> RankSummary {
    let source = match (job.rank, deduced) {
        (Some(_), _) => RankSource::UserSupplied { citation: job.rank_citation.clone() },
        (None, Some(_)) => RankSource::DeducedFromImages,
        (None, None) => RankSource::NotSupplied,
    };
    RankSummary { rank: job.rank.or(deduced), rank_l: job.rank_l, source, verdicts }
}

fn diagonal(job: &JobInput, a: &Rat, b: &Rat, mut notes: Vec<String>) -> Result<BrauerReport> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::Degenerate("a diagonal coefficient is zero".into()));
    }
    let half_ab = a * b / int(2);
    let c_diag = -int(27) * half_ab.square();
    let e = curve_data(&c_diag, &job.extra_points, job)?;
    let sqrt_c0 = Quad::new(Rat::zero(), int(3) * &half_ab / e.norm.w.cube(), -3);
    debug_assert_eq!(sqrt_c0.square(), Quad::from_rat(big(&e.norm.c0), -3));
    let ep = curve_data(&(-int(27) * big(&e.norm.c0)), &job.extra_points_prime, job)?;
    let sqrt_d = rat_sqrt(&big(&ep.norm.c0)).ok_or_else(|| Error::Invalid("isogenous constant is not a square".into()))?;

    let alpha_items: Vec<(Point<Rat>, CubeClass<Quad>)> = e
        .candidates
        .iter()
        .map(|p| Ok((p.clone(), alpha_quadratic(&e.curve, p, &sqrt_c0)?)))
        .collect::<Result<_>>()?;
    let alpha_prime_items: Vec<(Point<Rat>, CubeClass<Rat>)> = ep
        .candidates
        .iter()
        .map(|p| Ok((p.clone(), alpha(&ep.curve, p, &sqrt_d)?)))
        .collect::<Result<_>>()?;
    let two_root = sqrt_c0.scale(2);
    let kernel_class = CubeClass::new(two_root.clone())?;

    let mut verdicts = Vec::new();
    let mut deduced = None;
    let mut status = Certainty::Proved;

    let over_q = if job.base == BaseField::Rationals {
        let im_a = images(FieldTag::Quadratic { m: -3 }, alpha_items.clone())?;
        let im_b = images(FieldTag::Rationals, alpha_prime_items.clone())?;
        let up_a = twisted_part(&ambient_bound(&two_root, true)?)?;
        let up_b = ambient_bound(&sqrt_d.scale(2), false)?;
        let mut decision = decide_pair(
            job.rank,
            &OVER_Q_DIAGONAL,
            (im_a.lower.dimension(), im_b.lower.dimension()),
            (closed(&im_a.lower, &up_a), closed(&im_b.lower, &up_b)),
        );
        let disjoint = disjointness_check(&im_a.lower, &im_b.lower)?;
        if !disjoint.disjoint {
            decision.alpha = Certainty::Inconsistent;
            decision.alpha_prime = Certainty::Inconsistent;
            notes.push("The images of alpha and alpha' intersect nontrivially: the point data is wrong.".into());
        }
        if decision.rank_deduced {
            deduced = decision.rank;
        }
        verdicts.extend(decision.verdict.clone());
        let witnesses: Vec<Point<Rat>> = im_a.witnesses.iter().map(|(p, _)| e.norm.to_original(p)).collect();
        let cyclic = relative_brauer_rational(a, b, &witnesses)?;
        let rows: Vec<BTreeMap<u64, u8>> =
            cyclic.iter().map(|g| g.invariants.0.iter().map(|(p, v)| (*p, v.numerator())).collect()).collect();
        let dim = invariant_rank(&rows);
        let certainty = decision.alpha;
        status = status.combine(decision.alpha).combine(decision.alpha_prime);
        Some(OverQ {
            im_alpha: summarize_image("Q(omega)", &im_a, Some(&up_a), decision.alpha, &show_quad),
            im_alpha_prime: summarize_image("Q", &im_b, Some(&up_b), decision.alpha_prime, &show_rat),
            disjointness: Some(disjoint),
            brauer: BrauerGroupSummary {
                generators: cyclic.into_iter().map(AlgebraDescriptor::CyclicAlgebra).collect(),
                dimension: dim,
                order: 3u64.pow(dim as u32),
                certainty,
                statement: group_statement(dim, certainty),
            },
            decision,
        })
    } else {
        None
    };

    let rank_l = match job.base {
        BaseField::Rationals => job.rank_l.or(job.rank.map(|r| 2 * r)).or(deduced.map(|r| 2 * r)),
        BaseField::Eisenstein => job.rank,
    };
    if job.base == BaseField::Rationals {
        if let (Some(r), Some(rl)) = (job.rank.or(deduced), job.rank_l) {
            let v = validate_rank_doubling(r, rl);
            if !v.consistent {
                status = Certainty::Inconsistent;
            }
            verdicts.push(v);
        } else if job.rank_l.is_none() && rank_l.is_some() {
            notes.push("The rank over Q(omega) is taken to be twice the rank over Q.".into());
        }
    }

    let mut classes = alpha_items;
    for (p, c) in alpha_prime_items {
        classes.push((p, CubeClass::new(Quad::from_rat(c.rep, -3))?));
    }
    let mut im = images(FieldTag::Quadratic { m: -3 }, classes)?;
    if !im.lower.member(&kernel_class)? {
        let mut basis = im.lower.basis.clone();
        basis.push(kernel_class.clone());
        im.lower = CubeClassGroup::span(FieldTag::Quadratic { m: -3 }, &basis)?;
    }
    let upper = ambient_bound(&two_root, true)?;
    let decision = decide_single(rank_l, &OVER_Q_OMEGA, im.lower.dimension(), closed(&im.lower, &upper));
    if decision.rank_deduced && job.base == BaseField::Eisenstein {
        deduced = decision.rank;
    }
    verdicts.extend(decision.verdict.clone());
    status = status.combine(decision.alpha);
    let generators = relative_brauer_diagonal(a, b, &im.lower, Some(&kernel_class))?;
    let rows: Vec<BTreeMap<(u64, u8), u8>> = generators.iter().map(|g| g.table.vector()).collect();
    let dim = invariant_rank(&rows);
    let element_table = if im.lower.dimension() <= ELEMENT_TABLE_MAX_DIMENSION {
        element_table(a, &im.lower)?
    } else {
        Vec::new()
    };
    let over_q_omega = OverQOmega {
        rank: rank_l,
        im_alpha: summarize_image("Q(omega)", &im, Some(&upper), decision.alpha, &show_quad),
        brauer: BrauerGroupSummary {
            generators: generators.into_iter().map(AlgebraDescriptor::SymbolAlgebra).collect(),
            dimension: dim,
            order: 3u64.pow(dim as u32),
            certainty: decision.alpha,
            statement: group_statement(dim, decision.alpha),
        },
        decision,
        element_table,
    };
    if job.rank.is_none() && deduced.is_none() {
        notes.push("No rank was supplied.".into());
    }

    Ok(BrauerReport {
        base_field: job.base,
        form: FormSummary { text: String::new(), normalized: Default::default() },
        discriminant: String::new(),
        pipeline: "diagonal".into(),
        diagonalization: None,
        twist: None,
        jacobian: summarize_curve(&e, RootRepr::Quadratic(sqrt_c0)),
        isogenous: summarize_curve(&ep, RootRepr::Rational(fmt_rat(&sqrt_d))),
        rank: rank_summary(job, verdicts, deduced),
        over_q,
        over_q_omega: Some(over_q_omega),
        status,
        notes,
    })
}

/// `(a, ξ)_ω` for each nontrivial `ξ` up to inverse, `ξ` normalized so its first exponent is 1.
fn element_table(a: &Rat, g: &CubeClassGroup<Quad>) -> Result<Vec<SymbolAlgebra>> {
    let slot = Quad::from_rat(a.clone(), -3);
    let mut out = Vec::new();
    for (_, class) in g.elements() {
        let Some(v) = &class.vector else { continue };
        if v.values().next() != Some(&1) {
            continue;
        }
        out.push(SymbolAlgebra::new(slot.clone(), class.canonical_rep(), None)?);
    }
    Ok(out)
}

fn nondiagonal(job: &JobInput, delta: &Rat, mut notes: Vec<String>) -> Result<BrauerReport> {
    let twist = twist_class(&job.form)?;
    let e = curve_data(&(-int(27) * delta), &job.extra_points, job)?;
    let (m_c, k_c) = sqrt_parts(&big(&e.norm.c0))?;
    if m_c == 1 {
        return Err(Error::Unsupported(
            "-3 * discriminant is a square: the Jacobian has rational 3-torsion kernel points".into(),
        ));
    }
    let sqrt_c0 = Quad::new(Rat::zero(), k_c, m_c);
    let ep = curve_data(&(-int(27) * big(&e.norm.c0)), &job.extra_points_prime, job)?;
    let (m_d, k_d) = sqrt_parts(&big(&ep.norm.c0))?;
    let sqrt_d = Quad::new(Rat::zero(), k_d, m_d);

    let alpha_items: Vec<(Point<Rat>, CubeClass<Quad>)> = e
        .candidates
        .iter()
        .map(|p| Ok((p.clone(), alpha_quadratic(&e.curve, p, &sqrt_c0)?)))
        .collect::<Result<_>>()?;
    let alpha_prime_items: Vec<(Point<Rat>, CubeClass<Quad>)> = ep
        .candidates
        .iter()
        .map(|p| Ok((p.clone(), alpha_quadratic(&ep.curve, p, &sqrt_d)?)))
        .collect::<Result<_>>()?;
    let im_a = images(FieldTag::Quadratic { m: m_c }, alpha_items)?;
    let im_b = images(FieldTag::Quadratic { m: m_d }, alpha_prime_items)?;
    let decision = decide_pair(
        job.rank,
        &OVER_Q_GENERAL,
        (im_a.lower.dimension(), im_b.lower.dimension()),
        (false, false),
    );

    let lift = |x: &Rat| Quad::from_rat(x.clone(), m_c);
    let lifted = Curve { c: lift(&e.curve.c) };
    let witnesses: Vec<(Point<Rat>, Quad)> = im_a
        .witnesses
        .iter()
        .map(|(p, _)| Ok((p.clone(), alpha_rep(&lifted, &p.map(lift), &sqrt_c0)?)))
        .collect::<Result<_>>()?;
    let nd = relative_brauer_nondiagonal(&twist, &witnesses, &job.invariant_primes)?;
    let certainty = match decision.alpha {
        Certainty::Proved if !nd.determined => Certainty::LowerBoundOnly,
        c => c,
    };
    if !nd.determined {
        notes.push("Some local invariants are undetermined; the Brauer group order is a lower bound.".into());
    }
    notes.push(
        "A cup-product class and its inverse are not distinguished here; both invariant profiles are listed.".into(),
    );
    if job.rank.is_none() {
        notes.push("No rank was supplied.".into());
    }
    let status = decision.alpha.combine(decision.alpha_prime).combine(certainty);
    let verdicts: Vec<RankVerdict> = decision.verdict.iter().cloned().collect();
    let field_a = FieldTag::Quadratic { m: m_c }.to_string();
    let field_b = FieldTag::Quadratic { m: m_d }.to_string();
    let over_q = OverQ {
        im_alpha: summarize_image(&field_a, &im_a, None, decision.alpha, &show_quad),
        im_alpha_prime: summarize_image(&field_b, &im_b, None, decision.alpha_prime, &show_quad),
        disjointness: None,
        brauer: BrauerGroupSummary {
            generators: nd.generators.into_iter().map(AlgebraDescriptor::CupProduct).collect(),
            dimension: nd.dimension,
            order: 3u64.pow(nd.dimension as u32),
            certainty,
            statement: group_statement(nd.dimension, certainty),
        },
        decision,
    };
    Ok(BrauerReport {
        base_field: job.base,
        form: FormSummary { text: String::new(), normalized: Default::default() },
        discriminant: String::new(),
        pipeline: "nondiagonal".into(),
        diagonalization: None,
        twist: Some(twist),
        jacobian: summarize_curve(&e, RootRepr::Quadratic(sqrt_c0)),
        isogenous: summarize_curve(&ep, RootRepr::Quadratic(sqrt_d)),
        rank: rank_summary(job, verdicts, None),
        over_q: Some(over_q),
        over_q_omega: None,
        status,
        notes,
    })
}
