//! Subcommand implementations.

use std::path::Path;

use cosegal::chain::{betti_numbers, is_quasi_iso, ChainComplex};
use cosegal::commutative::{
    is_cosegal_monoid, is_latching_injective, strictify_commutative, validate_sym, SymLaxFunctor,
};
use cosegal::fixtures::{cylinder, symmetric_cylinder, weak_strict};
use cosegal::laxdiag::{
    check_triangles, gamma, is_bundle_cofibrant, is_excellent, is_u_cofibrant, is_we_ex, validate,
    LaxDiagram, LaxMorphism, ValidationReport,
};
use cosegal::seqcat::ObjectSet;
use cosegal::strictify::{
    algebra_category, check_quasi_strict_hypotheses, circle_coequalizer, colimit_stability_check, homology_units,
    inflate, strictify, CategoryPattern, Mode, QuasiStrictVerdict, SmallAlgebra, StrictificationResult,
};
use serde_json::json;

use crate::format::{self, Loaded};
use crate::{CheckArgs, CliError, Command, FixtureArgs, FixtureKind, ModeArg, Report, StrictifyArgs};

pub fn dispatch(command: &Command) -> Result<Report, CliError> {
    match command {
        Command::Validate { file } => validate_cmd(file),
        Command::Check(args) => check_cmd(args),
        Command::Gamma { file } => gamma_cmd(file),
        Command::Strictify(args) => strictify_cmd(args),
        Command::Commutative { file, cut } => commutative_cmd(file, *cut),
        Command::Counterexample => counterexample_cmd(),
        Command::Report { file } => report_cmd(file),
        Command::Fixture(args) => fixture_cmd(args),
    }
}

fn validation(loaded: &Loaded) -> ValidationReport {
    match loaded {
        Loaded::Diagram { diagram, witness } => {
            let mut report = validate(diagram);
            if let Some(w) = witness {
                report.violations.extend(w.validate().violations);
            }
            report
        }
        Loaded::Symmetric(c) => validate_sym(c),
    }
}

/// Loads a file and insists that it passes validation.
fn load_valid(path: &Path) -> Result<Loaded, CliError> {
    let loaded = format::parse(path)?;
    let report = validation(&loaded);
    if let Some(v) = report.violations.first() {
        let more = report.violations.len() - 1;
        let tail = if more > 0 { format!(" and {more} more") } else { String::new() };
        return Err(CliError::Math(format!("validation failed: {v}{tail}")));
    }
    Ok(loaded)
}

fn load_diagram(path: &Path) -> Result<(LaxDiagram, Option<LaxMorphism>), CliError> {
    match load_valid(path)? {
        Loaded::Diagram { diagram, witness } => Ok((diagram, witness)),
        Loaded::Symmetric(_) => Err(CliError::Input("this command needs a diagram section".into())),
    }
}

fn load_symmetric(path: &Path) -> Result<SymLaxFunctor, CliError> {
    match load_valid(path)? {
        Loaded::Symmetric(c) => Ok(c),
        Loaded::Diagram { .. } => Err(CliError::Input("this command needs a symmetric section".into())),
    }
}

fn validate_cmd(path: &Path) -> Result<Report, CliError> {
    let loaded = format::parse(path)?;
    let report = validation(&loaded);
    let mut r = Report::new("validate");
    match &loaded {
        Loaded::Diagram { diagram, witness } => {
            let shapes = diagram.shapes();
            let count: usize = shapes.shapes().iter().map(|s| s.len()).sum();
            r.line(format!(
                "diagram on {} objects, truncation {}, {count} sequences",
                shapes.objects().len(),
                shapes.truncation()
            ));
            if witness.is_some() {
                r.line("with a witness morphism");
            }
        }
        Loaded::Symmetric(c) => r.line(format!("symmetric functor, truncation {}", c.truncation())),
    }
    for v in &report.violations {
        r.line(format!("violation: {v}"));
    }
    r.passed = report.passed();
    r.line(if r.passed { "valid".to_string() } else { format!("{} violations", report.violations.len()) });
    r.set("violations", &report.violations);
    Ok(r)
}

/// The first structure map that is not a quasi-isomorphism.
fn first_non_quasi_iso(f: &LaxDiagram) -> Option<String> {
    let names = f.shapes().objects();
    f.bundle().components().iter().find_map(|c| {
        let shape = c.shape();
        shape.generating_arrows().iter().find(|&&g| !is_quasi_iso(c.map(g))).map(|&g| {
            let a = shape.arrow(g);
            format!("{} -> {}", names.format_seq(shape.seq(a.from)), names.format_seq(shape.seq(a.to)))
        })
    })
}

/// The first `σ` component that is not a quasi-isomorphism, skipping
/// diagonal homs when `off_diagonal` is set.
fn first_bad_sigma(f: &LaxDiagram, result: &StrictificationResult, off_diagonal: bool) -> Option<String> {
    let names = f.shapes().objects();
    f.shapes().shapes().iter().zip(&result.sigma).find_map(|(shape, maps)| {
        let (a, b) = shape.endpoints();
        if off_diagonal && a == b {
            return None;
        }
        maps.iter().position(|m| !is_quasi_iso(m)).map(|i| format!("σ at {}", names.format_seq(shape.seq(i))))
    })
}

fn check_cmd(args: &CheckArgs) -> Result<Report, CliError> {
    let all = !(args.cosegal || args.excellent || args.wex);
    let mut r = Report::new("check");
    let mut passed = true;
    match load_valid(&args.file)? {
        Loaded::Diagram { diagram, witness } => {
            if all || args.cosegal {
                let bad = first_non_quasi_iso(&diagram);
                passed &= bad.is_none();
                r.verdict("cosegal", bad.is_none(), bad.map(|m| format!("{m} is not a quasi-isomorphism")));
            }
            if all || args.excellent {
                let cofibrant = is_u_cofibrant(&diagram)?;
                let ok = is_excellent(&diagram, witness.as_ref())?;
                passed &= ok;
                let detail = match (cofibrant, witness.is_some()) {
                    (true, _) => "U-cofibrant",
                    (false, true) => "through the witness",
                    (false, false) => "not U-cofibrant and no witness given",
                };
                r.verdict("excellent", ok, Some(detail.into()));
            }
            if all || args.wex {
                let (ok, detail) = match &witness {
                    Some(w) => (is_we_ex(w), "the witness".to_string()),
                    None => {
                        let result = strictify(&diagram, 1)?;
                        let bad = first_bad_sigma(&diagram, &result, true);
                        (result.sigma_is_we_ex(), bad.unwrap_or_else(|| "strictification at cut 1".into()))
                    }
                };
                passed &= ok;
                r.verdict("we_ex", ok, Some(detail));
            }
        }
        Loaded::Symmetric(c) => {
            if args.wex {
                return Err(CliError::Input("--wex needs a diagram section".into()));
            }
            if all || args.cosegal {
                let ok = is_cosegal_monoid(&c)?;
                passed &= ok;
                r.verdict("cosegal", ok, None);
            }
            if all || args.excellent {
                let ok = is_latching_injective(&c, c.truncation())?;
                passed &= ok;
                r.verdict("latching_injective", ok, None);
            }
        }
    }
    r.passed = passed;
    Ok(r)
}

fn gamma_cmd(path: &Path) -> Result<Report, CliError> {
    let (f, _) = load_diagram(path)?;
    let g = gamma(f.bundle())?;
    let names = f.shapes().objects();
    let mut r = Report::new("gamma");
    let mut dims = serde_json::Map::new();
    for shape in f.shapes().shapes() {
        for s in shape.sequences() {
            let label = names.format_seq(s);
            let before = f.value(s)?.dims().to_vec();
            let after = g.diagram.value(s)?.dims().to_vec();
            r.line(format!("{label}: dims {before:?} free {after:?}"));
            dims.insert(label, json!({ "dims": before, "free": after }));
        }
    }
    r.set("dims", dims);
    let t = check_triangles(f.bundle(), &f)?;
    r.verdict("triangle_free", t.free_side, None);
    r.verdict("triangle_forgetful", t.forgetful_side, None);
    let source_cofibrant = is_bundle_cofibrant(f.bundle())?;
    let cofibrant = is_bundle_cofibrant(g.diagram.bundle())?;
    r.verdict("free_cofibrant", cofibrant, Some(format!("input cofibrant: {source_cofibrant}")));
    r.passed = t.free_side && t.forgetful_side && (cofibrant || !source_cofibrant);
    Ok(r)
}

fn push_homs(r: &mut Report, v: &QuasiStrictVerdict) {
    for h in &v.homs {
        r.line(format!(
            "hom {}{}: betti cut {:?} full {:?}, comparison {}, σ {}",
            h.source,
            h.target,
            h.betti_cut,
            h.betti_full,
            qi(h.comparison_quasi_iso),
            qi(h.sigma_quasi_iso)
        ));
    }
}

fn qi(b: bool) -> &'static str {
    if b {
        "quasi-iso"
    } else {
        "not quasi-iso"
    }
}

fn strictify_diagram(f: &LaxDiagram, cut: usize, mode: Mode, r: &mut Report) -> Result<bool, CliError> {
    check_quasi_strict_hypotheses(f, mode)?;
    let result = strictify(f, cut)?;
    let verdict = QuasiStrictVerdict::from_result(&result, mode);
    push_homs(r, &verdict);
    if let Some(a) = verdict.associativity {
        r.verdict("associative", a, None);
    }
    if let Some(h) = result.homology_semi()? {
        let units = homology_units(&h)?;
        let names = f.shapes().objects();
        for u in &units {
            r.verdict(&format!("homology_unit_{}", names.name(u.object)), u.unit.is_some(), None);
        }
    }
    let bad = if verdict.passed { None } else { first_bad_sigma(f, &result, mode == Mode::Ex) };
    let name = match mode {
        Mode::Proj => "we_proj",
        Mode::Ex => "we_ex",
    };
    r.verdict(name, verdict.passed, bad.map(|m| format!("{m} is not a quasi-isomorphism")));
    r.set("verdict", &verdict);
    Ok(verdict.passed && verdict.associativity != Some(false))
}

fn strictify_cmd(args: &StrictifyArgs) -> Result<Report, CliError> {
    let (f, _) = load_diagram(&args.file)?;
    let mode = match args.mode {
        ModeArg::Proj => Mode::Proj,
        ModeArg::Ex => Mode::Ex,
    };
    let mut r = Report::new("strictify");
    r.line(format!("cut {} of truncation {}", args.cut, f.truncation()));
    r.passed = strictify_diagram(&f, args.cut, mode, &mut r)?;
    Ok(r)
}

fn commutative_into(c: &SymLaxFunctor, cut: usize, r: &mut Report) -> Result<bool, CliError> {
    let result = strictify_commutative(c, cut)?;
    let d = &result.diagnostics;
    r.line(format!("carrier betti {:?}, full colimit betti {:?}", d.betti_cut, d.betti_full));
    r.verdict("commutative", result.commutative, None);
    if let Some(a) = result.associative() {
        r.verdict("associative", a, None);
    }
    r.verdict("sigma_quasi_iso", d.sigma_quasi_iso, None);
    r.verdict("comparison_quasi_iso", d.comparison_quasi_iso, None);
    r.verdict("monotone_comparison_quasi_iso", d.monotone_comparison_quasi_iso, None);
    r.set("diagnostics", d);
    let ok = result.verdict()?;
    r.verdict("commutative_strictification", ok, None);
    Ok(ok)
}

fn commutative_cmd(path: &Path, cut: usize) -> Result<Report, CliError> {
    let c = load_symmetric(path)?;
    let mut r = Report::new("commutative");
    r.line(format!("cut {cut} of truncation {}", c.truncation()));
    r.passed = commutative_into(&c, cut, &mut r)?;
    Ok(r)
}

fn padded(mut b: Vec<usize>, len: usize) -> Vec<usize> {
    b.resize(b.len().max(len), 0);
    b
}

fn counterexample_cmd() -> Result<Report, CliError> {
    let d = circle_coequalizer()?;
    // the unit has no initial role here, so the check only reports
    let v = colimit_stability_check(&d, 0)?;
    let len = v.colimit_betti.len().max(v.object_betti.iter().map(Vec::len).max().unwrap_or(0));
    let objects: Vec<Vec<usize>> = v.object_betti.iter().map(|b| padded(b.clone(), len)).collect();
    let colimit = padded(v.colimit_betti.clone(), len);
    let equivalent = objects.iter().all(|b| b == &colimit);
    let mut r = Report::new("counterexample");
    r.line("diagram: the two endpoint inclusions Q => I");
    for (name, b) in ["unit", "interval"].iter().zip(&objects) {
        r.line(format!("{name} betti {b:?}"));
    }
    r.line(format!("colimit betti {colimit:?}"));
    r.line(if equivalent { "colimit weakly equivalent" } else { "colimit NOT weakly equivalent" });
    r.set("object_betti", &objects);
    r.set("colimit_betti", &colimit);
    r.set("weakly_equivalent", equivalent);
    r.passed = !equivalent;
    Ok(r)
}

fn betti_lines(r: &mut Report, entries: Vec<(String, &ChainComplex)>) {
    let mut table = serde_json::Map::new();
    for (label, c) in entries {
        let b = betti_numbers(c);
        r.line(format!("{label}: betti {b:?}"));
        table.insert(label, json!(b));
    }
    r.set("betti", table);
}

fn attempt(r: &mut Report, name: &str, outcome: Result<bool, CliError>) {
    match outcome {
        Ok(_) => {}
        Err(CliError::Math(m)) => r.verdict(name, false, Some(m)),
        Err(e) => r.verdict(name, false, Some(e.to_string())),
    }
}

fn report_cmd(path: &Path) -> Result<Report, CliError> {
    let loaded = format::parse(path)?;
    let validation = validation(&loaded);
    let mut r = Report::new("report");
    r.verdict("valid", validation.passed(), validation.violations.first().map(ToString::to_string));
    r.passed = validation.passed();
    match &loaded {
        Loaded::Diagram { diagram: f, witness } => {
            let names = f.shapes().objects();
            let entries = f
                .shapes()
                .shapes()
                .iter()
                .flat_map(|sh| sh.sequences().iter().map(|s| (names.format_seq(s), f.value(s).expect("in shape"))))
                .collect();
            betti_lines(&mut r, entries);
            if !validation.passed() {
                return Ok(r);
            }
            let bad = first_non_quasi_iso(f);
            r.verdict("cosegal", bad.is_none(), bad.map(|m| format!("{m} is not a quasi-isomorphism")));
            r.verdict("u_cofibrant", is_u_cofibrant(f)?, None);
            r.verdict("excellent", is_excellent(f, witness.as_ref())?, None);
            if f.truncation() >= 2 {
                for mode in [Mode::Proj, Mode::Ex] {
                    let label = match mode {
                        Mode::Proj => "strictify_proj",
                        Mode::Ex => "strictify_ex",
                    };
                    r.line(format!("{label} at cut 1:"));
                    let outcome = strictify_diagram(f, 1, mode, &mut r);
                    attempt(&mut r, label, outcome);
                }
            }
        }
        Loaded::Symmetric(c) => {
            let entries = (1..=c.truncation()).map(|n| (format!("C({n})"), &c.values()[n - 1])).collect();
            betti_lines(&mut r, entries);
            if !validation.passed() {
                return Ok(r);
            }
            r.verdict("cosegal", is_cosegal_monoid(c)?, None);
            r.verdict("latching_injective", is_latching_injective(c, c.truncation())?, None);
            if c.truncation() >= 2 {
                r.line("commutative at cut 1:");
                let outcome = commutative_into(c, 1, &mut r);
                attempt(&mut r, "commutative_strictification", outcome);
            }
        }
    }
    Ok(r)
}

fn fixture_cmd(args: &FixtureArgs) -> Result<Report, CliError> {
    if args.objects.iter().all(|o| o.is_empty()) {
        return Err(CliError::Input("the object set is empty".into()));
    }
    let objects = ObjectSet::new(args.objects.iter().cloned())?;
    let l = args.truncation;
    let file = match args.kind {
        FixtureKind::Cylinder => format::serialize_diagram(&cylinder(&objects, l)?, None),
        FixtureKind::WeakStrict => format::serialize_diagram(&weak_strict(&objects, l)?, None),
        FixtureKind::Constant => {
            let d = algebra_category(&objects, SmallAlgebra::Rationals, CategoryPattern::Full)?;
            format::serialize_diagram(&inflate(&d, l)?, None)
        }
        FixtureKind::SymmetricCylinder => format::serialize_symmetric(&symmetric_cylinder(l)?),
    };
    let mut r = Report::new("fixture");
    match &args.output {
        Some(path) => {
            format::write(&file, path)?;
            r.line(format!("wrote {}", path.display()));
        }
        None => r.line(format::to_json(&file).trim_end().to_string()),
    }
    r.set("bundle", &file);
    Ok(r)
}
