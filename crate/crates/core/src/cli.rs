//! Commands run against a parsed instance, each producing a [`Report`].

use std::fmt;

use crate::algebra::check_algebra;
use crate::comodule::{
    check_comodule, is_colinear, is_cosmooth_global, is_relative_injective, is_smooth, kappa_map,
    lambda_map, Comodule,
};
use crate::constructions::fixed_points;
use crate::coring::{
    check_cointegral, check_coring, find_cointegral, find_cosplit_element, find_frobenius_element,
    is_central, is_frobenius_element, left_dual_ring, right_dual_product, right_dual_ring,
    Cointegral, DualSide, Supplement,
};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Scalar};
use crate::modules::central_elements;
use crate::oracle::{
    cosmooth_oracle_members, default_comodule_family, default_family,
    injectivity_extension_members, smooth_oracle_members,
};
use crate::report::{Answer, Basis, Report};
use crate::spec_file::{ElementChoice, InstanceSpec};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    Check,
    Cointegral,
    Cosplit,
    Frobenius,
    Central,
    Smooth(String),
    CosmoothGlobal,
    Injective(String),
    Oracle(String),
    DualRing(DualSide),
}

impl Command {
    pub fn parse(words: &[String]) -> Result<Self> {
        let bad = Error::Usage;
        let arg = |name: &str| {
            words
                .get(1)
                .cloned()
                .ok_or_else(|| bad(format!("'{name}' needs a comodule label")))
        };
        let (expected, command) = match words.first().map(String::as_str) {
            Some("check") => (1, Command::Check),
            Some("cointegral") => (1, Command::Cointegral),
            Some("cosplit") => (1, Command::Cosplit),
            Some("frobenius") => (1, Command::Frobenius),
            Some("central") => (1, Command::Central),
            Some("cosmooth-global") => (1, Command::CosmoothGlobal),
            Some("smooth") => (2, Command::Smooth(arg("smooth")?)),
            Some("injective") => (2, Command::Injective(arg("injective")?)),
            Some("oracle") => (2, Command::Oracle(arg("oracle")?)),
            Some("dual-ring") => {
                let side = match words.get(1).map(String::as_str) {
                    Some("left") => DualSide::Left,
                    Some("right") => DualSide::Right,
                    _ => return Err(bad("'dual-ring' needs 'left' or 'right'".into())),
                };
                (2, Command::DualRing(side))
            }
            Some(other) => return Err(bad(format!("unknown command '{other}'"))),
            None => return Err(bad("missing command".into())),
        };
        if words.len() != expected {
            return Err(bad(format!("unexpected argument '{}'", words[expected])));
        }
        Ok(command)
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Command::Check => f.write_str("check"),
            Command::Cointegral => f.write_str("cointegral"),
            Command::Cosplit => f.write_str("cosplit"),
            Command::Frobenius => f.write_str("frobenius"),
            Command::Central => f.write_str("central"),
            Command::CosmoothGlobal => f.write_str("cosmooth-global"),
            Command::Smooth(m) => write!(f, "smooth {m}"),
            Command::Injective(m) => write!(f, "injective {m}"),
            Command::Oracle(m) => write!(f, "oracle {m}"),
            Command::DualRing(DualSide::Left) => f.write_str("dual-ring left"),
            Command::DualRing(DualSide::Right) => f.write_str("dual-ring right"),
        }
    }
}

fn failed_verification(what: &str) -> Error {
    Error::Invariant(format!("{what} certificate failed substitution"))
}

fn verified(report: &mut Report) {
    report.text("verified", "substitution");
}

fn comodule<'a>(spec: &'a InstanceSpec, name: &str) -> Result<&'a Comodule> {
    spec.comodule(name)
        .map(|c| &c.comodule)
        .ok_or_else(|| Error::Usage(format!("no comodule labelled '{name}'")))
}

/// The cointegral in use and where it came from.
fn cointegral(spec: &InstanceSpec) -> Result<Option<(Cointegral, &'static str)>> {
    if let Some(d) = &spec.cointegral {
        return Ok(Some((d.clone(), "given")));
    }
    Ok(find_cointegral(&spec.coring)?.map(|s| (s.cointegral, "solver (free variables zero)")))
}

/// The supplement element: the file's choice, else `1⊗z` for the first
/// fixed point of a grading, else a Frobenius element, else a cosplit one.
fn supplement(spec: &InstanceSpec, report: &mut Report) -> Result<Supplement> {
    let c = &spec.coring;
    let (delta, delta_source) = cointegral(spec)?.ok_or_else(|| {
        Error::Incompatible("the coring admits no cointegral; the criteria need one".into())
    })?;
    let (element, source) = match (&spec.element, &spec.grading) {
        (Some(ElementChoice::Explicit(e)), _) => (e.clone(), "given".to_string()),
        (Some(ElementChoice::FixedPoint(z)), Some(gc)) => {
            let x = gc.xs.label_index(z).expect("checked by the parser");
            (gc.unit_at(x), format!("fixed point {z}"))
        }
        (_, grading) => {
            let fixed = grading.as_ref().and_then(|gc| {
                fixed_points(&gc.xs)
                    .first()
                    .map(|&z| (gc.unit_at(z), format!("fixed point {}", gc.xs.labels()[z])))
            });
            match fixed {
                Some(found) => found,
                None => match find_frobenius_element(c, &delta)? {
                    Some(e) => (e, "Frobenius element".into()),
                    None => (
                        find_cosplit_element(c)?.ok_or_else(|| {
                            Error::Incompatible(
                                "no A-central element available; add an 'element' line".into(),
                            )
                        })?,
                        "cosplit element".into(),
                    ),
                },
            }
        }
    };
    report.text("cointegral source", delta_source);
    report.matrix("cointegral on basis pairs", &delta.on_raw_pairs(c));
    report.vector("element", &element, &spec.basis_labels);
    report.text("element source", source);
    Supplement::new(c, delta, element)
}

pub fn run_command(spec: &InstanceSpec, command: &Command, seed: u64) -> Result<Report> {
    let c = &spec.coring;
    let mut report = Report::new(
        &command.to_string(),
        &spec.coring_name,
        c.dim(),
        spec.field.to_string(),
    );
    match command {
        Command::Check => {
            let mut ok = true;
            let coring = check_coring(c);
            ok &= coring.is_pass();
            report.text("coring axioms", coring.to_string());
            if let Some(delta) = &spec.cointegral {
                let v = check_cointegral(c, delta.matrix())?;
                ok &= v.is_pass();
                report.text("given cointegral", v.to_string());
            }
            if let Some(ElementChoice::Explicit(e)) = &spec.element {
                let central = is_central(c, e);
                ok &= central;
                report.text("given element central", Answer::from_bool(central).to_string());
            }
            for m in &spec.comodules {
                let v = check_comodule(&m.comodule);
                ok &= v.is_pass();
                report.text(&format!("comodule {} axioms", m.name), v.to_string());
            }
            report.verdict = Answer::from_bool(ok);
        }
        Command::Cointegral => match find_cointegral(c)? {
            Some(solution) => {
                if !check_cointegral(c, solution.cointegral.matrix())?.is_pass() {
                    return Err(failed_verification("cointegral"));
                }
                report.verdict = Answer::Yes;
                report.matrix("certificate delta on basis pairs", &solution.cointegral.on_raw_pairs(c));
                report.number("solution-dimension", solution.solution_dim());
                if let Some(given) = &spec.cointegral {
                    report.text(
                        "given cointegral in solution space",
                        Answer::from_bool(solution.contains(given.matrix())).to_string(),
                    );
                }
                verified(&mut report);
            }
            None => {
                report.text("note", "infeasible: no bimodule map delta satisfies the retraction and compatibility equations");
            }
        },
        Command::Cosplit => match find_cosplit_element(c)? {
            Some(e) => {
                if !is_central(c, &e) || c.counit().apply(&e) != c.algebra().unit() {
                    return Err(failed_verification("cosplit"));
                }
                report.verdict = Answer::Yes;
                report.vector("certificate e", &e, &spec.basis_labels);
                verified(&mut report);
            }
            None => report.text("note", "infeasible: no A-central e with counit(e) = 1"),
        },
        Command::Frobenius => {
            let (delta, source) = cointegral(spec)?.ok_or_else(|| {
                Error::Incompatible("the coring admits no cointegral".into())
            })?;
            report.text("cointegral source", source);
            report.matrix("cointegral on basis pairs", &delta.on_raw_pairs(c));
            match find_frobenius_element(c, &delta)? {
                Some(e) => {
                    if !is_frobenius_element(c, &delta, &e) {
                        return Err(failed_verification("Frobenius"));
                    }
                    report.verdict = Answer::Yes;
                    report.vector("certificate e", &e, &spec.basis_labels);
                    verified(&mut report);
                }
                None => report.text(
                    "note",
                    "infeasible: no A-central e with delta(c e) = delta(e c) = counit(c)",
                ),
            }
        }
        Command::Central => {
            let basis = central_elements(c.bimodule())?;
            for e in &basis {
                if !is_central(c, e) {
                    return Err(failed_verification("central element"));
                }
            }
            report.verdict = Answer::from_bool(!basis.is_empty());
            report.number("solution-dimension", basis.len());
            for (i, e) in basis.iter().enumerate() {
                report.vector(&format!("basis {i}"), e, &spec.basis_labels);
            }
            verified(&mut report);
        }
        Command::Smooth(name) => {
            let m = comodule(spec, name)?;
            let sup = supplement(spec, &mut report)?;
            let kappa = kappa_map(m, &sup)?;
            report.matrix("kappa_M", &kappa);
            match is_smooth(m, &sup)? {
                Some(lambda) => {
                    let id = Matrix::identity(c.field(), m.dim());
                    let linear = m
                        .module()
                        .actions()
                        .iter()
                        .all(|x| &lambda * x == x * &lambda);
                    if &lambda * &kappa != id || !linear {
                        return Err(failed_verification("smoothness"));
                    }
                    report.verdict = Answer::Yes;
                    report.matrix("certificate lambda_M", &lambda);
                    verified(&mut report);
                }
                None => report.text(
                    "note",
                    "infeasible: no right A-linear lambda_M with lambda_M kappa_M = 1",
                ),
            }
        }
        Command::CosmoothGlobal => {
            let sup = supplement(spec, &mut report)?;
            let lambda = lambda_map(c, &sup);
            report.matrix("lambda", &lambda);
            match is_cosmooth_global(c, &sup)? {
                Some(xi) => {
                    if &right_dual_product(c, &xi, &lambda)? != c.counit() {
                        return Err(failed_verification("cosmoothness"));
                    }
                    report.verdict = Answer::Yes;
                    report.matrix("certificate xi", &xi);
                    verified(&mut report);
                }
                None => report.text(
                    "note",
                    "infeasible: lambda has no left inverse in the right dual ring",
                ),
            }
        }
        Command::Injective(name) => {
            let m = comodule(spec, name)?;
            match is_relative_injective(m)? {
                Some(h) => {
                    let induced = crate::comodule::induced_comodule(c, m.module())?;
                    let id = Matrix::identity(c.field(), m.dim());
                    if &h * m.coaction() != id || !is_colinear(&h, &induced, m)? {
                        return Err(failed_verification("injectivity"));
                    }
                    report.verdict = Answer::Yes;
                    report.matrix("certificate retraction", &h);
                    verified(&mut report);
                }
                None => report.text("note", "infeasible: the coaction has no colinear retraction"),
            }
        }
        Command::Oracle(name) => oracle(spec, name, seed, &mut report)?,
        Command::DualRing(side) => {
            let ring = match side {
                DualSide::Left => left_dual_ring(c)?,
                DualSide::Right => right_dual_ring(c)?,
            };
            let verdict = check_algebra(&ring.algebra);
            let unit = ring.element(ring.algebra.unit());
            report.verdict = Answer::from_bool(verdict.is_pass() && &unit == c.counit());
            report.number("dimension", ring.dim());
            report.text("algebra axioms", verdict.to_string());
            report.vector("unit (coordinates of counit)", ring.algebra.unit(), ring.algebra.labels());
            for (i, b) in ring.basis.iter().enumerate() {
                report.matrix(&format!("basis {}", ring.algebra.labels()[i]), b);
            }
            report.matrix("structure constants", &structure_matrix(&ring.algebra));
            if report.verdict == Answer::Yes {
                verified(&mut report);
            }
        }
    }
    Ok(report)
}

/// Row `i * n + j` holds the coordinates of `b_i b_j`.
fn structure_matrix(a: &crate::algebra::Algebra) -> Matrix {
    let rows: Vec<Vec<Scalar>> = a.structure_constants().to_vec();
    Matrix::from_rows(a.field(), a.dim(), rows)
}

fn yes_no(values: &[bool]) -> String {
    values
        .iter()
        .map(|&b| Answer::from_bool(b).to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn oracle(spec: &InstanceSpec, name: &str, seed: u64, report: &mut Report) -> Result<()> {
    let m = comodule(spec, name)?;
    let sup = supplement(spec, report)?;
    report.basis = Basis::Sampled;
    report.number("seed", seed as usize);
    let family = default_family(m, &spec.fixture_modules()?, seed);
    let labels: Vec<String> = family
        .iter()
        .map(|(l, n)| format!("{l}(dim {})", n.dim()))
        .collect();
    report.text("family", labels.join(" "));
    let modules: Vec<_> = family.into_iter().map(|(_, n)| n).collect();
    let smooth = smooth_oracle_members(m, &modules, &sup)?;
    let cosmooth = cosmooth_oracle_members(m, &modules, &sup)?;
    let smooth_all = smooth.iter().all(|&b| b);
    report.text("smooth per member", yes_no(&smooth));
    report.text("cosmooth per member", yes_no(&cosmooth));
    report.text(
        "cosmooth (sampled)",
        Answer::from_bool(cosmooth.iter().all(|&b| b)).to_string(),
    );
    let criterion = is_smooth(m, &sup)?.is_some();
    report.text("smooth criterion", Answer::from_bool(criterion).to_string());
    if criterion != smooth_all {
        return Err(Error::Invariant(
            "the sampled smoothness verdict disagrees with the criterion".into(),
        ));
    }
    let declared: Vec<(String, Comodule)> = spec
        .comodules
        .iter()
        .map(|d| (d.name.clone(), d.comodule.clone()))
        .collect();
    let comodules = default_comodule_family(m, &declared)?;
    let names: Vec<String> = comodules.iter().map(|(l, _)| l.clone()).collect();
    let members: Vec<Comodule> = comodules.into_iter().map(|(_, n)| n).collect();
    let extension = injectivity_extension_members(m, &members)?;
    report.text("comodule family", names.join(" "));
    report.text("extension along coactions per member", yes_no(&extension));
    report.verdict = Answer::from_bool(smooth_all);
    Ok(())
}
