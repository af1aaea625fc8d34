//! One function per subcommand, each a thin wrapper over `scattered-core`.

use std::collections::BTreeMap;
use std::path::Path;

use serde_json::{json, Value};

use scattered_core::codes::rank_metric::rank_condition;
use scattered_core::codes::{
    hyperplane_spectrum, mrd_from_poly, rank_distance, two_weight_code, verify_blocking, LinearizedPolynomial,
};
use scattered_core::geom::{design_check, translation_cap, translation_hyperoval, AbbSpace, ArcCertificate, ArcPoint};
use scattered_core::linset::splash::first_line_of_kind;
use scattered_core::linset::{
    linear_set, perp, pseudoregulus, splash, splash_subspace, LinearSet, SesquilinearForm, SplashKind,
};
use scattered_core::scattered::{analyze, construct_max_scattered, dim_bounds, exhaustive_max_scattered, BoundSet};
use scattered_core::{
    gf, pow_u128, DesarguesianSpread, Error, FieldTower, ProjectivePoint, Spread, Subspace, DEFAULT_BUDGET,
};

use crate::cli::{Command, FieldArgs, KindArg, RunArgs, SubspaceArg};
use crate::error::CliError;
use crate::format::{element_to_digits, parse_poly, read_subspace, SpreadDescriptor};
use crate::parallel;
use crate::report::Report;

/// Flag, then the SCATTER_BUDGET variable, then the library default.
pub fn resolve_budget(flag: Option<u64>, env: Option<&str>) -> Result<u64, CliError> {
    let budget = match (flag, env) {
        (Some(b), _) => b,
        (None, Some(s)) => {
            s.trim().parse().map_err(|_| CliError::Usage(format!("SCATTER_BUDGET '{s}' is not a number")))?
        }
        (None, None) => DEFAULT_BUDGET,
    };
    if budget == 0 {
        return Err(CliError::Usage("budget must be positive".into()));
    }
    Ok(budget)
}

fn prime_power(q: u32) -> Option<(u32, u32)> {
    let p = (2..=q).find(|d| q % d == 0)?;
    let (mut m, mut e) = (q, 0);
    while m % p == 0 {
        m /= p;
        e += 1;
    }
    (m == 1).then_some((p, e))
}

pub fn resolve_pe(f: &FieldArgs) -> Result<(u32, u32), CliError> {
    match f.q {
        Some(q) => {
            let (p, e) = prime_power(q).ok_or_else(|| CliError::Usage(format!("q = {q} is not a prime power")))?;
            if f.p.is_some_and(|x| x != p) || f.e.is_some_and(|x| x != e) {
                return Err(CliError::Usage(format!("--q {q} disagrees with --p/--e")));
            }
            Ok((p, e))
        }
        None => Ok((f.p.unwrap_or(2), f.e.unwrap_or(1))),
    }
}

pub fn tower(f: &FieldArgs) -> Result<FieldTower, CliError> {
    let (p, e) = resolve_pe(f)?;
    if f.t == 0 {
        return Err(CliError::Usage("t must be at least 1".into()));
    }
    let mut b = FieldTower::builder(p, e, f.t);
    if let Some(s) = &f.base_irr {
        b = b.base_irreducible(parse_poly(s)?);
    }
    if let Some(s) = &f.irr {
        b = b.top_irreducible(parse_poly(s)?);
    }
    Ok(b.build()?)
}

fn spread(f: &FieldArgs, budget: u64) -> Result<DesarguesianSpread, CliError> {
    if f.r == 0 {
        return Err(CliError::Usage("r must be at least 1".into()));
    }
    Ok(DesarguesianSpread::new(tower(f)?, f.r)?.with_budget(budget))
}

fn load(arg: &SubspaceArg, d: &DesarguesianSpread) -> Result<Option<Subspace>, CliError> {
    match &arg.subspace {
        Some(path) => Ok(Some(read_subspace(&read_file(path)?, d)?)),
        None => Ok(None),
    }
}

fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))
}

/// The given subspace, or a constructed maximum scattered one.
fn load_or_construct(arg: &SubspaceArg, d: &DesarguesianSpread) -> Result<(Subspace, &'static str), CliError> {
    match load(arg, d)? {
        Some(u) => Ok((u, "file")),
        None => Ok((construct_max_scattered(d)?, "constructed")),
    }
}

fn rows(u: &Subspace, t: &FieldTower) -> Vec<String> {
    u.basis()
        .iter()
        .map(|r| r.iter().map(|&x| element_to_digits(x, t.p(), t.e())).collect::<Vec<_>>().join(" "))
        .collect()
}

fn point_json(x: &ProjectivePoint) -> Value {
    json!(x.coords())
}

fn bounds_json(b: &BoundSet) -> Value {
    json!({
        "lower_maximal": b.lower_maximal,
        "upper_general": b.upper_general,
        "upper_desarguesian": b.upper_desarguesian,
        "existence_lower": b.existence_lower,
        "existence_max_product": b.existence_max_product,
        "existence_largest_divisor": b.existence_largest_divisor,
        "existence_ambiguous": b.existence_ambiguous,
        "maximum_case": b.maximum_case.map(|c| c.tag()),
    })
}

fn params(report: &mut Report, d: &DesarguesianSpread) {
    report.input("spread", SpreadDescriptor::of(d));
}

fn weight_identity(l: &LinearSet) -> bool {
    let q = u64::from(l.q());
    let total: u128 = l.weighted_points().iter().map(|&(_, w)| pow_u128(q, w as u32) - 1).sum();
    total == pow_u128(q, l.rank() as u32) - 1
}

fn linset_outputs(report: &mut Report, l: &LinearSet) {
    report
        .output("r", l.r())
        .output("t", l.t())
        .output("q", l.q())
        .output("rank", l.rank())
        .output("size", l.size())
        .output("max_size", l.max_size().to_string())
        .output(
            "points",
            l.weighted_points().iter().map(|(x, w)| json!({"point": x.coords(), "weight": w})).collect::<Vec<_>>(),
        )
        .output("weight_histogram", l.weight_histogram());
    report.table(["weight", "count"], l.weight_histogram());
}

fn arc_json(cert: &ArcCertificate) -> Value {
    let points: Vec<Value> = cert
        .points
        .iter()
        .map(|p| match p {
            ArcPoint::Affine(v) => json!(v),
            ArcPoint::Infinite(e) => json!({ "infinite": e }),
        })
        .collect();
    json!({
        "model": cert.model.name(),
        "size": cert.size,
        "points": points,
        "lines_checked": cert.lines_checked.to_string(),
        "max_collinear": cert.max_collinear,
    })
}

fn core_kind(k: KindArg) -> SplashKind {
    match k {
        KindArg::External => SplashKind::External,
        KindArg::Tangent => SplashKind::Tangent,
        KindArg::Secant => SplashKind::Secant,
    }
}

/// Runs one command and returns its report. Failed checks are recorded in
/// the report; the caller turns them into the exit status.
pub fn run(command: &Command, run: &RunArgs, budget: u64) -> Result<Report, CliError> {
    let mut report = Report::new(command.name());
    report.input("budget", budget);
    let workers = run.parallel.max(1);
    match command {
        Command::Field { field } => {
            let tw = tower(field)?;
            let top = tw.top();
            report.input("p", tw.p()).input("e", tw.e()).input("t", tw.t());
            report
                .output("q", tw.q())
                .output("order", top.order())
                .output("base_irreducible", tw.base_irreducible())
                .output("irreducible", tw.top_irreducible())
                .output("q_basis", tw.q_basis());
            let order = u128::from(top.order());
            if order * order <= u128::from(budget) {
                let qt = u64::from(top.order());
                let q = u64::from(tw.q());
                let t = tw.t() as u32;
                let mut frob_ok = true;
                let mut trace_ok = true;
                let mut norm_ok = true;
                for a in top.elements() {
                    frob_ok &= tw.frobenius(a, t) == a;
                    let tr = tw.trace(a);
                    trace_ok &= tw.in_base(tr);
                    norm_ok &= tw.in_base(tw.norm(a)) && tw.norm(a) == top.pow(a, (qt - 1) / (q - 1));
                    for b in top.elements() {
                        frob_ok &= tw.frobenius(top.mul(a, b), 1) == top.mul(tw.frobenius(a, 1), tw.frobenius(b, 1));
                        frob_ok &= tw.frobenius(top.add(a, b), 1) == top.add(tw.frobenius(a, 1), tw.frobenius(b, 1));
                        trace_ok &= tw.trace(top.add(a, b)) == top.add(tr, tw.trace(b));
                    }
                }
                report.check("frobenius is a field automorphism of order t", frob_ok);
                report.check("trace is additive into GF(q)", trace_ok);
                report.check("norm is x^((q^t-1)/(q-1)) into GF(q)", norm_ok);
                report.check("irreducible", gf::is_irreducible(tw.base(), tw.top_irreducible())?);
            }
        }
        Command::Spread { field } => {
            let d = spread(field, budget)?;
            params(&mut report, &d);
            let rep = d.verify_partition()?;
            report
                .output("element_count", rep.element_count.to_string())
                .output("element_dim", d.element_dim())
                .output("ambient_dim", d.ambient_dim())
                .output("nonzero_vectors", rep.nonzero_vectors.to_string());
            report.check("elements have dimension t", rep.element_dims_ok);
            report.check("elements partition the nonzero vectors", rep.partition_ok);
            report.check("classify inverts field reduction", rep.inverse_ok);
        }
        Command::Analyze { field, subspace } => {
            let d = spread(field, budget)?;
            params(&mut report, &d);
            let u = load(subspace, &d)?.ok_or_else(|| CliError::Usage("analyze needs --subspace".into()))?;
            let rep = analyze(&u, &d)?;
            let q = u64::from(d.q());
            let weighted: u128 = rep.profile.iter().map(|(&w, &c)| u128::from(c) * (pow_u128(q, w as u32) - 1)).sum();
            report
                .output("dim", rep.dim)
                .output("ambient_dim", rep.ambient_dim)
                .output("profile", &rep.profile)
                .output("linear_set_size", rep.linear_set_size)
                .output("scattered", rep.is_scattered)
                .output("maximal", rep.is_maximally_scattered)
                .output("maximum", rep.is_maximum)
                .output("bounds", rep.bounds.as_ref().map(bounds_json));
            report.table(["weight", "points"], rep.profile.clone());
            report.check("weight identity", weighted == u.vector_count() - 1);
        }
        Command::Extend { field, subspace } => {
            let d = spread(field, budget)?;
            params(&mut report, &d);
            let u = load(subspace, &d)?.unwrap_or_else(|| Subspace::zero(d.field().clone(), d.ambient_dim()));
            let next = parallel::extend(&u, &d, workers)?;
            report.output("input_dim", u.dim()).output("extended", next.is_some());
            if let Some(w) = &next {
                report.output("dim", w.dim()).output("subspace", rows(w, d.tower()));
                report.check("extension is scattered", analyze(w, &d)?.is_scattered);
                report.check("extension contains U", w.contains(&u)?);
            }
        }
        Command::Search { field, target, restarts, exhaustive } => {
            let d = spread(field, budget)?;
            params(&mut report, &d);
            let b = dim_bounds(d.r(), d.t(), d.q());
            report.output("bounds", bounds_json(&b));
            let zero = Subspace::zero(d.field().clone(), d.ambient_dim());
            let (mode, u) = if *exhaustive {
                let (m, w) = exhaustive_max_scattered(&d, budget)?;
                report.check("maximum within rt/2", d.t() < 2 || m <= b.upper_desarguesian);
                report.check("maximum at least the lower bound", m >= b.lower_maximal);
                ("exhaustive", w)
            } else if *restarts > 0 {
                let goal = target.unwrap_or(b.upper_desarguesian);
                report.input("seed", run.seed).input("restarts", restarts).input("target", goal);
                let (i, w) = parallel::random_restarts(&d, &zero, goal, *restarts, run.seed, workers)?;
                report.output("restart", i).output("target_reached", w.dim() >= goal);
                if w.dim() < goal {
                    report.check("greedy result meets the lower bound", w.dim() >= b.lower_maximal);
                }
                ("random", w)
            } else {
                let w = parallel::maximally_scatter(&zero, &d, workers)?;
                report.check("greedy result meets the lower bound", w.dim() >= b.lower_maximal);
                if let Some(goal) = target {
                    report.input("target", goal).output("target_reached", w.dim() >= *goal);
                }
                ("greedy", w)
            };
            report.input("mode", mode);
            report.check("result is scattered", analyze(&u, &d)?.is_scattered);
            report.output("dim", u.dim()).output("subspace", rows(&u, d.tower()));
        }
        Command::Bounds { field } => {
            let (p, e) = resolve_pe(field)?;
            let q = p.pow(e);
            let b = dim_bounds(field.r, field.t, q);
            report.input("r", field.r).input("t", field.t).input("q", q);
            if let Value::Object(m) = bounds_json(&b) {
                report.outputs.extend(m);
            }
        }
        Command::Linset { field, subspace } => {
            let d = spread(field, budget)?;
            params(&mut report, &d);
            let (u, source) = load_or_construct(subspace, &d)?;
            report.input("subspace_source", source);
            let l = linear_set(&u, &d)?;
            linset_outputs(&mut report, &l);
            report.check("weight identity", weight_identity(&l));
        }
        Command::Dual { field, subspace } => {
            let d = spread(field, budget)?;
            params(&mut report, &d);
            let (u, source) = load_or_construct(subspace, &d)?;
            report.input("subspace_source", source);
            let form = SesquilinearForm::standard(d.r());
            let up = perp(&u, &form, &d)?;
            let l = linear_set(&up, &d)?;
            report.output("dual_subspace", rows(&up, d.tower()));
            linset_outputs(&mut report, &l);
            report.check("dim U + dim U^perp = rt", u.dim() + up.dim() == d.ambient_dim());
            report.check("U^perp^perp = U", perp(&up, &form, &d)? == u);
            report.check("weight identity", weight_identity(&l));
        }
        Command::Splash { field, kind } => {
            let tw = tower(field)?;
            let kind = core_kind(*kind);
            report.input("r", field.r).input("t", tw.t()).input("q", tw.q()).input("kind", kind.name());
            let (p, q) = first_line_of_kind(&tw, field.r, kind, budget)?;
            let s = splash(&tw, None, &p, &q)?;
            let d = DesarguesianSpread::new(tw.clone(), 2)?.with_budget(budget);
            let u = splash_subspace(&d, None, &p, &q)?;
            let l = linear_set(&u, &d)?;
            let from_u: BTreeMap<&ProjectivePoint, ()> = l.points().map(|x| (x, ())).collect();
            let on_line: BTreeMap<&ProjectivePoint, ()> = s.line_points.iter().map(|x| (x, ())).collect();
            report
                .output("line", json!([p, q]))
                .output("kind", s.kind.name())
                .output("size", s.points.len())
                .output(
                    "points",
                    s.points.iter().map(|(x, c)| json!({"point": x.coords(), "hyperplanes": c})).collect::<Vec<_>>(),
                )
                .output("line_points", s.line_points.iter().map(point_json).collect::<Vec<_>>())
                .output("containing_hyperplanes", s.containing_hyperplanes)
                .output("rational_points_on_line", s.rational_points_on_line)
                .output("subspace", rows(&u, &tw))
                .output("subspace_dim", u.dim());
            report.table(["hyperplanes", "points"], {
                let mut h: BTreeMap<u64, u64> = BTreeMap::new();
                for (_, c) in &s.points {
                    *h.entry(*c).or_default() += 1;
                }
                h
            });
            report.check("splash has the requested kind", s.kind == kind);
            report.check("splash equals the linear set of its subspace", from_u == on_line);
        }
        Command::Pseudoregulus { field, subspace } => {
            let d = spread(field, budget)?;
            params(&mut report, &d);
            let (u, source) = load_or_construct(subspace, &d)?;
            report.input("subspace_source", source);
            let l = linear_set(&u, &d)?;
            let res = pseudoregulus(&l, &d, budget)?;
            let secant = |s: &Subspace| rows(s, d.tower());
            report
                .output("secant_count", res.secants.len())
                .output("transversal_count", res.transversals.len())
                .output("secants", res.secants.iter().map(secant).collect::<Vec<_>>())
                .output("transversals", res.transversals.iter().map(secant).collect::<Vec<_>>())
                .output(
                    "spectrum",
                    res.spectrum.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect::<BTreeMap<_, _>>(),
                );
            report.table(["points_on_line", "lines"], res.spectrum.iter().map(|(k, v)| (*k, v.to_string())));
            report.check("two transversals", res.transversals.len() == 2);
        }
        Command::Spectrum { field, subspace } => {
            let d = spread(field, budget)?;
            params(&mut report, &d);
            let (u, source) = load_or_construct(subspace, &d)?;
            report.input("subspace_source", source);
            let l = linear_set(&u, &d)?;
            let s = hyperplane_spectrum(&l, &d, budget)?;
            report
                .output("n", s.n)
                .output(
                    "sizes",
                    s.sizes.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect::<BTreeMap<_, _>>(),
                )
                .output("expected", s.expected.map(|(a, b)| [a.to_string(), b.to_string()]));
            report.table(["intersection", "hyperplanes"], s.sizes.iter().map(|(k, v)| (*k, v.to_string())));
            if let Some((m1, m2)) = s.expected {
                report.check(
                    "exactly two intersection numbers",
                    s.sizes.keys().all(|&k| k as u128 == m1 || k as u128 == m2),
                );
            }
        }
        Command::Code { field, subspace } => {
            let d = spread(field, budget)?;
            params(&mut report, &d);
            let (u, source) = load_or_construct(subspace, &d)?;
            report.input("subspace_source", source);
            let c = two_weight_code(&u, &d, budget)?;
            let tw = d.tower();
            let digits = tw.e() * tw.t() as u32;
            let generator: Vec<String> = c
                .generator
                .iter()
                .map(|row| row.iter().map(|&x| element_to_digits(x, tw.p(), digits)).collect::<Vec<_>>().join(" "))
                .collect();
            let (w1, w2) = c.expected_weights;
            report
                .output("n", c.n)
                .output("length_formula", "(q^m-1)/(q-1)")
                .output("dimension", c.dimension)
                .output("generator", generator)
                .output("expected_weights", [w1.min(w2).to_string(), w1.max(w2).to_string()])
                .output(
                    "weight_enumerator",
                    c.weight_enumerator.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect::<BTreeMap<_, _>>(),
                );
            report.table(["weight", "count"], c.weight_enumerator.iter().map(|(k, v)| (*k, v.to_string())));
            let nonzero: Vec<u128> = c.weight_enumerator.keys().filter(|&&w| w > 0).map(|&w| w as u128).collect();
            report.check("exactly two nonzero weights", nonzero == [w1.min(w2), w1.max(w2)]);
        }
        Command::Blocking { field, subspace, k, m } => {
            let d = spread(field, budget)?;
            params(&mut report, &d);
            let (mut u, source) = load_or_construct(subspace, &d)?;
            if let Some(m) = m {
                if *m > u.dim() {
                    return Err(CliError::Usage(format!("m = {m} exceeds dim U = {}", u.dim())));
                }
                u = u.truncated(*m);
            }
            report.input("subspace_source", source).input("k", k).input("m", u.dim());
            let rep = verify_blocking(&u, &d, *k, budget)?;
            report
                .output("size", rep.size.to_string())
                .output("subspace_dim", rep.subspace_dim)
                .output("multiplicity", rep.multiplicity.to_string())
                .output("subspaces_checked", rep.subspaces_checked.to_string())
                .output("min_intersection", rep.min_intersection.to_string());
            report.check(
                "size is theta_{m-1}(q)",
                rep.size == scattered_core::theta(u.dim() as i64 - 1, u64::from(d.q())),
            );
            report.check("every subspace meets B(U) often enough", rep.min_intersection >= rep.multiplicity);
        }
        Command::Mrd { field, poly } => {
            let tw = tower(field)?;
            let d = DesarguesianSpread::new(tw.clone(), 2)?.with_budget(budget);
            let coeffs = parse_poly(poly)?;
            let f = LinearizedPolynomial::new(&tw, &coeffs)?;
            report.input("q", tw.q()).input("t", tw.t()).input("poly", &coeffs);
            let t = tw.t();
            let scattered = analyze(&f.graph(&d)?, &d)?.is_scattered;
            let full = pow_u128(u64::from(tw.q()), 2 * t as u32);
            let (size, dist, mrd) = match mrd_from_poly(&f) {
                Ok(code) => {
                    let (dist, mrd) = rank_distance(&code, budget)?;
                    (code.size(), Some(dist), mrd)
                }
                Err(Error::InvalidInput(_)) if f.is_zero() => (0, None, false),
                Err(e) => return Err(e.into()),
            };
            report
                .output("size", size.to_string())
                .output("size_without_zero", size.saturating_sub(1).to_string())
                .output("min_rank_distance", dist)
                .output("mrd", mrd)
                .output("graph_scattered", scattered)
                .output("rank_condition", rank_condition(&f));
            let mrd_shape = dist == Some(t - 1) && size == full;
            report.check("graph scattered iff d = t-1 and size q^(2t)", t < 2 || scattered == mrd_shape);
            report.check("rank condition iff graph scattered", rank_condition(&f) == scattered);
        }
        Command::Hyperoval { field, subspace } => {
            let d = spread(field, budget)?;
            params(&mut report, &d);
            let (u, source) = load_or_construct(subspace, &d)?;
            report.input("subspace_source", source);
            let cert = translation_hyperoval(&u, &AbbSpace::new(&d))?;
            if let Value::Object(m) = arc_json(&cert) {
                report.outputs.extend(m);
            }
            report.output("translation_space", "origin coset");
            report.check("no three points collinear", cert.no_three_collinear());
            report.check("q^t + 2 points", cert.size as u128 == pow_u128(2, d.t() as u32) + 2);
        }
        Command::Cap { field, subspace, exhaustive } => {
            let d = spread(field, budget)?;
            params(&mut report, &d);
            let (u, source) = match load(subspace, &d)? {
                Some(u) => (u, "file"),
                None if *exhaustive => (exhaustive_max_scattered(&d, budget)?.1, "exhaustive"),
                None => match construct_max_scattered(&d) {
                    Ok(u) => (u, "constructed"),
                    Err(Error::Unsupported(_)) => {
                        let zero = Subspace::zero(d.field().clone(), d.ambient_dim());
                        (parallel::maximally_scatter(&zero, &d, workers)?, "greedy")
                    }
                    Err(e) => return Err(e.into()),
                },
            };
            report.input("subspace_source", source).output("subspace", rows(&u, d.tower()));
            let cert = translation_cap(&u, &AbbSpace::new(&d))?;
            if let Value::Object(m) = arc_json(&cert) {
                report.outputs.extend(m);
            }
            report.check("no three points collinear", cert.no_three_collinear());
        }
        Command::DesignCheck { field } => {
            let d = spread(field, budget)?;
            params(&mut report, &d);
            let rep = design_check(&AbbSpace::new(&d), budget)?;
            report
                .output("points", rep.points.to_string())
                .output("line_size", rep.line_size.to_string())
                .output("lambda", rep.lambda)
                .output("lines", rep.lines.to_string());
            report.check("every pair of points on exactly one line", rep.pairs_covered_once);
            report.check("parallel classes partition the points", rep.parallel_classes_ok);
            report.check("unique parallel through each antiflag", rep.antiflag_ok);
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn budgets() {
        assert_eq!(resolve_budget(None, None).unwrap(), DEFAULT_BUDGET);
        assert_eq!(resolve_budget(None, Some("500")).unwrap(), 500);
        assert_eq!(resolve_budget(Some(7), Some("500")).unwrap(), 7);
        assert!(resolve_budget(Some(0), None).is_err());
        assert!(resolve_budget(None, Some("lots")).is_err());
    }

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(8), Some((2, 3)));
        assert_eq!(prime_power(7), Some((7, 1)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
    }

    #[test]
    fn q_flag_conflicts() {
        let mut f = FieldArgs { p: None, e: None, q: Some(9), t: 2, r: 2, irr: None, base_irr: None };
        assert_eq!(resolve_pe(&f).unwrap(), (3, 2));
        f.p = Some(2);
        assert!(resolve_pe(&f).is_err());
    }
}
