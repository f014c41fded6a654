//! Command implementations: each builds a [`ReportDocument`], renders it
//! as text or JSON, and returns the process exit code.

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use num_traits::ToPrimitive;

use tiltwall::arith::Rational;
use tiltwall::cohom::{cohomology, AssertedVanishing, DimValue, LineBundleSum, TwoTermComplex};
use tiltwall::lattice::invariants;
use tiltwall::report::{
    format_rational, parse_class, parse_line_bundle, parse_object, parse_polarization,
    parse_rational, SurdRecord,
};
use tiltwall::scenarios::{
    ext_dims_between, run_report, scenario, CandidateRecord, DerivedObject, WallReport,
};
use tiltwall::search::{brute_force_oracle, enumerate_candidates, OracleBox, SearchProblem};
use tiltwall::walls::{wall_between, WallLocus};

use crate::document::{
    CandidatesResult, CohomResult, ExtResult, OracleResult, ReportDocument, Results, TopPoint,
    WallResult,
};
use crate::plot::{render_svg, PlotWall};
use crate::{Command, SideArg};

pub enum CliError {
    Core(tiltwall::Error),
    Io(PathBuf, std::io::Error),
    Usage(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(path, e) => write!(f, "{}: {e}", path.display()),
            CliError::Usage(msg) => write!(f, "{msg}"),
        }
    }
}

impl From<tiltwall::Error> for CliError {
    fn from(e: tiltwall::Error) -> Self {
        CliError::Core(e)
    }
}

type CliResult<T> = Result<T, CliError>;

fn write_file(path: &Path, contents: &str) -> CliResult<()> {
    fs::write(path, contents).map_err(|e| CliError::Io(path.to_path_buf(), e))
}

fn query(pairs: &[(&str, String)]) -> BTreeMap<String, String> {
    pairs
        .iter()
        .map(|(k, v)| (k.to_string(), v.clone()))
        .collect()
}

fn emit(doc: &ReportDocument, json: bool, text: &str) {
    if json {
        println!("{}", doc.to_json());
    } else {
        println!("{text}");
    }
}

pub fn run(cmd: Command) -> CliResult<u8> {
    match cmd {
        Command::Walls { u, v, h, json } => cmd_walls(&u, &v, &h, json),
        Command::Candidates {
            v,
            h,
            min_r2,
            collapse,
            include_equal,
            json,
        } => cmd_candidates(&v, &h, min_r2.as_deref(), collapse.as_deref(), include_equal, json),
        Command::Ext {
            probe,
            target,
            side,
            assume,
            json,
        } => cmd_ext(&probe, &target, side, assume.as_deref(), json),
        Command::Cohom { l, json } => cmd_cohom(&l, json),
        Command::Report { scenario, json, out } => cmd_report(&scenario, json, out.as_deref()),
        Command::Plot {
            scenario,
            walls,
            nu0,
            out,
        } => cmd_plot(scenario.as_deref(), &walls, nu0.as_deref(), &out),
        Command::Oracle {
            v,
            h,
            min_r2,
            include_equal,
            r_max,
            d_max,
            c_max,
            check,
            json,
        } => cmd_oracle(&v, &h, &min_r2, include_equal, r_max, d_max, c_max, check, json),
    }
}

fn cmd_walls(u_text: &str, v_text: &str, h_text: &str, json: bool) -> CliResult<u8> {
    let u = parse_class(u_text)?;
    let v = parse_class(v_text)?;
    let h = parse_polarization(h_text)?;
    let locus = wall_between(&u, &v, &h)?;

    let (endpoints, top_point, text) = match &locus {
        WallLocus::Semicircle(w) => {
            let (lo, hi) = w.endpoints();
            let (beta, alpha_sq) = w.top_point();
            let text = format!(
                "numerical wall between {u_text} and {v_text} with H = {}:\n  \
                 semicircle: center beta = {}, radius_sq = {}\n  \
                 endpoints: beta = {lo}, {hi}\n  \
                 top point: (beta, alpha_sq) = ({}, {})",
                h.divisor(),
                format_rational(&w.center_beta),
                format_rational(&w.radius_sq),
                format_rational(&beta),
                format_rational(&alpha_sq),
            );
            (
                Some((SurdRecord::from(&lo), SurdRecord::from(&hi))),
                Some(TopPoint { beta, alpha_sq }),
                text,
            )
        }
        WallLocus::Vertical(w) => (
            None,
            None,
            format!(
                "vertical wall between {u_text} and {v_text} with H = {}: beta = {}",
                h.divisor(),
                format_rational(&w.beta)
            ),
        ),
        WallLocus::Degenerate => (
            None,
            None,
            format!(
                "no wall between {u_text} and {v_text} with H = {}: \
                 proportional classes or empty circle",
                h.divisor()
            ),
        ),
    };

    let doc = ReportDocument::new(
        "walls",
        query(&[
            ("u", u_text.to_string()),
            ("v", v_text.to_string()),
            ("H", h_text.to_string()),
        ]),
        Results::Wall(WallResult {
            locus,
            endpoints,
            top_point,
        }),
    );
    emit(&doc, json, &text);
    Ok(0)
}

fn candidate_lines(rows: &[CandidateRecord]) -> String {
    if rows.is_empty() {
        return "  (none)".to_string();
    }
    rows.iter()
        .map(|r| {
            let lifts = if r.lifts.is_empty() {
                "-".to_string()
            } else {
                r.lifts
                    .iter()
                    .map(tiltwall::report::format_line_bundle)
                    .collect::<Vec<_>>()
                    .join(", ")
            };
            format!(
                "  {}  radius_sq {}  lifts {}  complement {}",
                r.invariants,
                format_rational(&r.radius_sq),
                lifts,
                r.complement
            )
        })
        .collect::<Vec<_>>()
        .join("\n")
}

fn cmd_candidates(
    v_text: &str,
    h_text: &str,
    min_r2: Option<&str>,
    collapse: Option<&str>,
    include_equal: bool,
    json: bool,
) -> CliResult<u8> {
    let v = parse_class(v_text)?;
    let h = parse_polarization(h_text)?;
    let vi = invariants(&v, &h)?;
    let min_radius_sq = match (min_r2, collapse) {
        (Some(text), None) => parse_rational(text)?,
        (None, Some(text)) => {
            let u = parse_class(text)?;
            match wall_between(&u, &v, &h)? {
                WallLocus::Semicircle(w) => w.radius_sq,
                other => {
                    return Err(CliError::Usage(format!(
                        "collapse class defines no semicircular wall against {v_text}: {other:?}"
                    )))
                }
            }
        }
        _ => {
            return Err(CliError::Usage(
                "exactly one of --min-r2 or --collapse is required".into(),
            ))
        }
    };

    let problem = SearchProblem::new(vi, h, min_radius_sq.clone(), include_equal)?;
    let candidates = enumerate_candidates(&problem)?;
    let rows: Vec<CandidateRecord> = candidates
        .iter()
        .map(|c| CandidateRecord::from_candidate(c, &vi))
        .collect();

    let relation = if include_equal { ">=" } else { ">" };
    let text = format!(
        "candidates for v = {v_text}, H = {}, radius_sq {relation} {}:\n{}",
        h.divisor(),
        format_rational(&min_radius_sq),
        candidate_lines(&rows)
    );
    let mut q = query(&[
        ("v", v_text.to_string()),
        ("H", h_text.to_string()),
        ("include-equal", include_equal.to_string()),
    ]);
    if let Some(t) = min_r2 {
        q.insert("min-r2".into(), t.to_string());
    }
    if let Some(t) = collapse {
        q.insert("collapse".into(), t.to_string());
    }
    let doc = ReportDocument::new(
        "candidates",
        q,
        Results::Candidates(CandidatesResult {
            min_radius_sq,
            include_equal_radius: include_equal,
            candidates: rows,
        }),
    );
    emit(&doc, json, &text);
    Ok(0)
}

fn object_from_spec(text: &str) -> CliResult<DerivedObject> {
    let spec = parse_object(text)?;
    Ok(match (spec.deg_minus_1.is_empty(), spec.deg_0.is_empty()) {
        (true, _) => DerivedObject::sheaf(LineBundleSum::new(spec.deg_0)),
        (false, true) => DerivedObject::shifted(LineBundleSum::new(spec.deg_minus_1)),
        (false, false) => DerivedObject::Complex(TwoTermComplex::new(
            LineBundleSum::new(spec.deg_minus_1),
            LineBundleSum::new(spec.deg_0),
        )),
    })
}

fn dim_line(degree: i32, v: &DimValue) -> String {
    match v {
        DimValue::Exact(n) => format!("  ext^{degree} = {n}"),
        DimValue::Interval { lo, hi } => format!("  ext^{degree} in [{lo}, {hi}]"),
    }
}

fn cmd_ext(
    probe_text: &str,
    target_text: &str,
    side: SideArg,
    assume: Option<&Path>,
    json: bool,
) -> CliResult<u8> {
    let probe_spec = parse_object(probe_text)?;
    if !probe_spec.deg_minus_1.is_empty() {
        return Err(CliError::Usage(
            "the probe must be an unshifted sum of line bundles".into(),
        ));
    }
    let probe = DerivedObject::sheaf(LineBundleSum::new(probe_spec.deg_0));
    let mut target = object_from_spec(target_text)?;

    if let Some(path) = assume {
        let text = fs::read_to_string(path).map_err(|e| CliError::Io(path.to_path_buf(), e))?;
        let assumptions: Vec<AssertedVanishing> = serde_json::from_str(&text)
            .map_err(|e| CliError::Usage(format!("bad assumptions file: {e}")))?;
        match &mut target {
            DerivedObject::Complex(c) => c.assumptions.extend(assumptions),
            _ => {
                return Err(CliError::Usage(
                    "vanishing assumptions apply only to two-term complex targets".into(),
                ))
            }
        }
    }

    let (x, y) = match side {
        SideArg::FromProbe => (&probe, &target),
        SideArg::ToProbe => (&target, &probe),
    };
    let dims = ext_dims_between(x, y)?;

    let mut lines = vec![format!("Ext^i({x}, {y}):")];
    for (degree, v) in &dims.dims {
        lines.push(dim_line(*degree, v));
    }
    lines.push(format!("  euler: {}", dims.euler));
    let text = lines.join("\n");

    let mut q = query(&[
        ("probe", probe_text.to_string()),
        ("target", target_text.to_string()),
        (
            "side",
            match side {
                SideArg::FromProbe => "from-probe".to_string(),
                SideArg::ToProbe => "to-probe".to_string(),
            },
        ),
    ]);
    if let Some(path) = assume {
        q.insert("assume".into(), path.display().to_string());
    }
    let doc = ReportDocument::new(
        "ext",
        q,
        Results::Ext(ExtResult {
            source: x.to_string(),
            target: y.to_string(),
            dims,
        }),
    );
    emit(&doc, json, &text);
    Ok(0)
}

fn cmd_cohom(l_text: &str, json: bool) -> CliResult<u8> {
    let l = parse_line_bundle(l_text)?;
    let (h0, h1, h2) = cohomology(&l);
    let euler = (l.a + 1) * (l.b + 1);
    let text = format!("{l_text}: h^0 = {h0}, h^1 = {h1}, h^2 = {h2} (euler {euler})");
    let doc = ReportDocument::new(
        "cohom",
        query(&[("L", l_text.to_string())]),
        Results::Cohom(CohomResult {
            line_bundle: l_text.to_string(),
            h0,
            h1,
            h2,
            euler,
        }),
    );
    emit(&doc, json, &text);
    Ok(0)
}

fn report_text(report: &WallReport) -> String {
    let mut lines = vec![format!(
        "scenario {}: {} with H = {}, Hilbert polynomial {}",
        report.scenario, report.class, report.polarization, report.hilbert_polynomial
    )];
    lines.push(format!(
        "collapsing wall radius_sq = {}",
        format_rational(&report.collapsing_radius_sq)
    ));
    lines.push("walls (outermost first):".into());
    for w in &report.walls {
        let backward = w
            .ext_backward
            .map(|n| format!(", ext1(quot,sub) = {n}"))
            .unwrap_or_default();
        lines.push(format!(
            "  {}: {} | {}  radius_sq {}  ext1(sub,quot) = {}{}",
            w.name,
            w.subobject,
            w.quotient,
            format_rational(&w.radius_sq),
            w.ext_forward,
            backward
        ));
    }
    lines.push("checks:".into());
    for c in &report.checks {
        if c.passed {
            lines.push(format!("  ok   {}", c.name));
        } else {
            lines.push(format!("  FAIL {}: {}", c.name, c.detail));
        }
    }
    lines.push(
        if report.passed {
            "report: PASS"
        } else {
            "report: FAIL"
        }
        .into(),
    );
    lines.join("\n")
}

fn cmd_report(name: &str, json: bool, out: Option<&Path>) -> CliResult<u8> {
    let s = scenario(name)?;
    let report = run_report(&s)?;
    let passed = report.passed;
    let citations: Vec<String> = s.walls.iter().map(|w| w.citation.clone()).collect();
    let text = report_text(&report);
    let doc = ReportDocument::new(
        "report",
        query(&[("scenario", name.to_string())]),
        Results::Report(Box::new(report)),
    )
    .with_citations(citations);
    if let Some(path) = out {
        write_file(path, &doc.to_json())?;
    }
    emit(&doc, json, &text);
    Ok(if passed { 0 } else { 1 })
}

fn rational_f64(r: &Rational) -> f64 {
    r.to_f64().expect("plot coordinates fit in f64")
}

fn cmd_plot(
    scenario_name: Option<&str>,
    wall_specs: &[String],
    nu0: Option<&str>,
    out: &Path,
) -> CliResult<u8> {
    let mut walls = Vec::new();
    let mut nu0_value = nu0.map(parse_rational).transpose()?.map(|r| rational_f64(&r));
    let title;

    if let Some(name) = scenario_name {
        let s = scenario(name)?;
        let report = run_report(&s)?;
        for w in &report.walls {
            walls.push(PlotWall {
                center: rational_f64(&w.center_beta),
                radius: rational_f64(&w.radius_sq).sqrt(),
                label: format!("{}: {} | {}", w.name, w.subobject, w.quotient),
            });
        }
        // the nu = 0 locus of a torsion class is the vertical line through
        // the common center
        if nu0_value.is_none() {
            if let Some(w) = report.walls.first() {
                nu0_value = Some(rational_f64(&w.center_beta));
            }
        }
        title = format!("walls for {} with H = {}", report.moduli_label, report.polarization);
    } else {
        if wall_specs.is_empty() {
            return Err(CliError::Usage(
                "either --scenario or at least one --wall is required".into(),
            ));
        }
        for (i, spec) in wall_specs.iter().enumerate() {
            let mut parts = spec.splitn(3, ',');
            let center = parts.next().ok_or_else(|| {
                CliError::Usage(format!("bad wall spec {spec:?}: expected center,radius_sq"))
            })?;
            let radius_sq = parts.next().ok_or_else(|| {
                CliError::Usage(format!("bad wall spec {spec:?}: expected center,radius_sq"))
            })?;
            let label = parts
                .next()
                .map(str::to_string)
                .unwrap_or_else(|| format!("wall {}", i + 1));
            let radius_sq = parse_rational(radius_sq.trim())?;
            if rational_f64(&radius_sq) <= 0.0 {
                return Err(CliError::Usage(format!(
                    "wall spec {spec:?} has nonpositive radius_sq"
                )));
            }
            walls.push(PlotWall {
                center: rational_f64(&parse_rational(center.trim())?),
                radius: rational_f64(&radius_sq).sqrt(),
                label,
            });
        }
        title = "numerical walls".to_string();
    }

    let svg = render_svg(&walls, nu0_value, &title);
    write_file(out, &svg)?;
    println!("wrote {}", out.display());
    Ok(0)
}

#[allow(clippy::too_many_arguments)]
fn cmd_oracle(
    v_text: &str,
    h_text: &str,
    min_r2: &str,
    include_equal: bool,
    r_max: i64,
    d_max: i64,
    c_max: i64,
    check: bool,
    json: bool,
) -> CliResult<u8> {
    let v = parse_class(v_text)?;
    let h = parse_polarization(h_text)?;
    let vi = invariants(&v, &h)?;
    let min_radius_sq = parse_rational(min_r2)?;
    let problem = SearchProblem::new(vi, h, min_radius_sq, include_equal)?;
    let bounds = OracleBox { r_max, d_max, c_max };
    let swept = brute_force_oracle(&problem, &bounds)?;

    let matches = if check {
        Some(enumerate_candidates(&problem)? == swept)
    } else {
        None
    };
    let rows: Vec<CandidateRecord> = swept
        .iter()
        .map(|c| CandidateRecord::from_candidate(c, &vi))
        .collect();

    let mut text = format!(
        "oracle sweep for v = {v_text}, H = {}, box r <= {r_max}, |d| <= {d_max}, |c| <= {c_max}:\n{}",
        h.divisor(),
        candidate_lines(&rows)
    );
    if let Some(ok) = matches {
        text.push_str(if ok {
            "\noracle agrees with the closed-form enumeration"
        } else {
            "\nMISMATCH between oracle and closed-form enumeration"
        });
    }

    let doc = ReportDocument::new(
        "oracle",
        query(&[
            ("v", v_text.to_string()),
            ("H", h_text.to_string()),
            ("min-r2", min_r2.to_string()),
            ("include-equal", include_equal.to_string()),
            ("check", check.to_string()),
        ]),
        Results::Oracle(OracleResult {
            r_max,
            d_max,
            c_max,
            candidates: rows,
            matches_enumeration: matches,
        }),
    );
    emit(&doc, json, &text);
    Ok(if matches == Some(false) { 1 } else { 0 })
}
