//! Command-line front end shared by the `covlie` binary.
//!
//! Exit codes: 0 when every check passes, 1 when a verification check fails,
//! 2 for usage and configuration errors.

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::affine::build_affine_gs_with_s_action;
use crate::affine::delta::verify_delta_identities;
use crate::affine::realization::{default_window, verify_realization};
use crate::affine::twisted::verify_twisted;
use crate::algebras::{build_all, chi_form, classify, k_lie_algebra, minus_theta, s_action_on_gs, verify_gs};
use crate::covariant::{covariant_algebra, phi_fixed_point_iso, GroupActionOnLie};
use crate::cyclotomic::CycNumber;
use crate::error::{Error, Result};
use crate::group::{make_character, Character, FinAbGroup};
use crate::liealg::{BilinearForm, LinearMap, SparseVec};
use crate::report::{Check, VerificationReport, ENGINE_VERSION};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;

/// Default bound on `|m|, |n|` for the delta suite.
pub const DELTA_BOUND: i64 = 5;

#[derive(Parser, Debug)]
#[command(
    name = "covlie",
    version,
    about = "Build and verify cyclotomic Lie algebras exactly"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Write gl_S, A_S^tau, g_S, their forms, pi and the S-action as JSON.
    Build {
        #[arg(long)]
        group: String,
        #[arg(long = "char", default_value_t = 1)]
        character: i64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Run a verification suite and print its report.
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        #[arg(long)]
        group: String,
        #[arg(long = "char", default_value_t = 1)]
        character: i64,
        /// Degree window for the affine suites, or the `|m|, |n|` bound for delta.
        #[arg(long)]
        window: Option<i64>,
        /// JSON file with a grading element in `A_S^tau` coordinates.
        #[arg(long, conflicts_with = "search_h")]
        grading_element: Option<PathBuf>,
        /// Search for the grading element (the default when no file is given).
        #[arg(long)]
        search_h: bool,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Classify the blocks of g_S / I.
    Classify {
        #[arg(long)]
        group: String,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Gs,
    Covariant,
    Affine,
    Delta,
    #[value(name = "appendix", alias = "twisted")]
    Twisted,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Md,
}

fn character(group: &FinAbGroup, k: i64) -> Result<Character> {
    make_character(group, k)
}

fn matrix_json(rows: usize, cols: usize, entries: impl Iterator<Item = (usize, usize, CycNumber)>) -> Value {
    let entries: Vec<(usize, usize, CycNumber)> = entries.filter(|e| !e.2.is_zero()).collect();
    let order = entries
        .iter()
        .fold(1u32, |acc, e| num_integer::lcm(acc, e.2.order()));
    let list: Vec<Value> = entries
        .iter()
        .map(|(i, j, c)| json!([i, j, c.to_string_in(order).expect("order divides")]))
        .collect();
    json!({"rows": rows, "cols": cols, "scalar_order": order, "entries": list})
}

/// A linear map as its matrix (row = codomain index, column = domain index).
pub fn map_json(f: &LinearMap) -> Value {
    let entries = (0..f.domain_dim()).flat_map(|j| f.column(j).iter().map(move |(i, c)| (i, j, c.clone())));
    matrix_json(f.codomain_dim(), f.domain_dim(), entries)
}

pub fn form_json(b: &BilinearForm) -> Value {
    let n = b.dim();
    let entries = (0..n).flat_map(|i| (0..n).map(move |j| (i, j, b.get(i, j).clone())));
    matrix_json(n, n, entries)
}

/// The JSON bundle written by `build`.
pub fn cmd_build(group: &FinAbGroup, k: i64) -> Result<Value> {
    let chi = character(group, k)?;
    let p = build_all(group)?;
    let form = chi_form(&p.gs, &chi)?;
    let action: Vec<Value> = s_action_on_gs(&p.gs).iter().map(map_json).collect();
    Ok(json!({
        "engine_version": ENGINE_VERSION,
        "group": group.name(),
        "character": k,
        "dims": {
            "gl_S": p.gl.algebra.dim(),
            "A_S_tau": p.ast.algebra.dim(),
            "g_S": p.gs.dim(),
        },
        "gl_S": {"algebra": p.gl.algebra.to_json(), "form": form_json(&p.gl.form), "tau": map_json(&p.gl.tau)},
        "A_S_tau": {
            "algebra": p.ast.algebra.to_json(),
            "form": form_json(&p.ast.form),
            "inclusion": map_json(&p.ast.inclusion),
        },
        "g_S": {"algebra": p.gs.algebra.to_json(), "chi_form": form_json(&form)},
        "pi": map_json(&p.pi),
        "s_action": action,
    }))
}

/// Covariant algebras of the finite actions the engine constructs:
/// `<-theta>` on `K`, `<tau>` on `gl_S`, and `S` on windowed affine `g_S`.
pub fn verify_covariant(
    group: &FinAbGroup,
    chi: Option<&Character>,
    window: i64,
) -> Result<VerificationReport> {
    let mut report =
        VerificationReport::new("covariant", &group.name(), chi.map(|c| c.index()), Some(window));
    let mut run = |what: &str,
                   l: &crate::liealg::LieAlgebra,
                   g: &GroupActionOnLie,
                   form: Option<&BilinearForm>|
     -> Result<()> {
        let cov = covariant_algebra(l, g, form)?;
        let phi = phi_fixed_point_iso(l, g, &cov)?;
        let tag = |c: &Check| {
            let name = format!("{what}: {}", c.name);
            c.clone().renamed(name)
        };
        report.extend(cov.checks.iter().map(tag));
        report.extend(phi.checks.iter().map(tag));
        Ok(())
    };
    let k = k_lie_algebra(group);
    let theta = GroupActionOnLie::new(&k, vec![minus_theta(group)])?;
    run("K / <-theta>", &k, &theta, None)?;
    let p = build_all(group)?;
    let tau = GroupActionOnLie::new(&p.gl.algebra, vec![p.gl.tau.clone()])?;
    run("gl_S / <tau>", &p.gl.algebra, &tau, Some(&p.gl.form))?;
    match chi {
        Some(chi) => {
            let aff = build_affine_gs_with_s_action(chi, window)?;
            run(
                "affine g_S / S",
                &aff.affine.algebra,
                &aff.action,
                Some(&aff.loop_form),
            )?;
        }
        None => report.push(Check::skipped("affine g_S / S", "no character for this group")),
    }
    Ok(report)
}

/// Reads a grading element: `{"scalar_order": N, "coordinates": [[index, "value"], ...]}`
/// in `A_S^tau` coordinates, values in the text form of [`CycNumber::parse`].
pub fn read_grading_element(path: &Path) -> Result<SparseVec> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    let v: Value =
        serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    let bad = |what: &str| Error::Parse(format!("grading element: {what}"));
    let order = v["scalar_order"].as_u64().ok_or_else(|| bad("scalar_order"))? as u32;
    let mut entries = Vec::new();
    for e in v["coordinates"].as_array().ok_or_else(|| bad("coordinates"))? {
        let i = e[0].as_u64().ok_or_else(|| bad("index"))? as usize;
        let c = CycNumber::parse(e[1].as_str().ok_or_else(|| bad("value"))?, order)?;
        entries.push((i, c));
    }
    Ok(SparseVec::from_entries(entries))
}

pub fn cmd_verify(
    suite: Suite,
    group: &FinAbGroup,
    k: i64,
    window: Option<i64>,
    h: Option<SparseVec>,
) -> Result<Vec<VerificationReport>> {
    let needs_chi = !matches!(suite, Suite::Gs | Suite::Covariant | Suite::All);
    let chi = if group.is_cyclic() {
        Some(character(group, k)?)
    } else if needs_chi {
        return Err(Error::NotCyclic(group.name()));
    } else {
        None
    };
    let w = window.unwrap_or_else(|| default_window(group.order()));
    let odd = group.order() % 2 == 1;
    let mut out = Vec::new();
    if matches!(suite, Suite::Gs | Suite::All) {
        out.push(verify_gs(group, chi.as_ref())?);
    }
    if matches!(suite, Suite::Covariant | Suite::All) {
        out.push(verify_covariant(group, chi.as_ref(), w)?);
    }
    if let Some(chi) = &chi {
        if matches!(suite, Suite::Affine | Suite::All) {
            out.push(verify_realization(chi, w)?);
        }
        if matches!(suite, Suite::Delta | Suite::All) {
            out.push(verify_delta_identities(chi, window.unwrap_or(DELTA_BOUND))?);
        }
        if suite == Suite::Twisted && !odd {
            return Err(Error::Invalid(format!(
                "the appendix (twisted) suite needs odd order, got {}",
                group.name()
            )));
        }
        if matches!(suite, Suite::Twisted | Suite::All) && odd && group.order() > 1 {
            out.push(verify_twisted(chi, w, h)?);
        }
    }
    Ok(out)
}

fn render_reports(reports: &[VerificationReport], format: Format) -> String {
    match format {
        Format::Json => {
            let v: Vec<&VerificationReport> = reports.iter().collect();
            if v.len() == 1 {
                v[0].to_json()
            } else {
                serde_json::to_string_pretty(&v).expect("reports serialize")
            }
        }
        Format::Md => reports
            .iter()
            .map(|r| r.to_markdown())
            .collect::<Vec<_>>()
            .join("\n"),
    }
}

fn emit(text: &str, output: Option<&Path>) -> Result<()> {
    match output {
        Some(p) => std::fs::write(p, format!("{text}\n"))
            .map_err(|e| Error::Invalid(format!("{}: {e}", p.display()))),
        None => {
            use std::io::Write;
            // a closed pipe (e.g. `| head`) is not an error
            let _ = writeln!(std::io::stdout().lock(), "{text}");
            Ok(())
        }
    }
}

fn parse_group(s: &str) -> Result<FinAbGroup> {
    s.parse()
}

/// Runs a parsed command and returns the process exit code.
pub fn run(cli: Cli) -> i32 {
    let outcome = match cli.command {
        Command::Build {
            group,
            character,
            output,
        } => parse_group(&group)
            .and_then(|g| cmd_build(&g, character))
            .and_then(|v| {
                emit(
                    &serde_json::to_string_pretty(&v).expect("json"),
                    output.as_deref(),
                )
            })
            .map(|_| true),
        Command::Verify {
            suite,
            group,
            character,
            window,
            grading_element,
            search_h: _,
            format,
            output,
        } => (|| {
            let g = parse_group(&group)?;
            let h = grading_element.as_deref().map(read_grading_element).transpose()?;
            let reports = cmd_verify(suite, &g, character, window, h)?;
            emit(&render_reports(&reports, format), output.as_deref())?;
            Ok(reports.iter().all(VerificationReport::passed))
        })(),
        Command::Classify { group, format } => {
            parse_group(&group).and_then(|g| classify(&g)).and_then(|rec| {
                let text = match format {
                    Format::Json => serde_json::to_string_pretty(&rec).expect("json"),
                    Format::Md => rec.to_markdown(),
                };
                emit(&text, None).map(|_| true)
            })
        }
    };
    match outcome {
        Ok(true) => EXIT_PASS,
        Ok(false) => EXIT_FAIL,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_CONFIG
        }
    }
}

/// Applies `COVLIE_THREADS` to the global rayon pool.
pub fn configure_threads() -> std::result::Result<(), String> {
    let Ok(v) = std::env::var("COVLIE_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| format!("COVLIE_THREADS must be a positive integer, got {v:?}"))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| e.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn build_z5_dims() {
        let v = cmd_build(&FinAbGroup::cyclic(5), 1).unwrap();
        assert_eq!(v["dims"], json!({"gl_S": 25, "A_S_tau": 10, "g_S": 10}));
        assert_eq!(v["s_action"].as_array().unwrap().len(), 5);
    }

    #[test]
    fn bad_character_is_configuration_error() {
        let cli = Cli::parse_from(["covlie", "build", "--group", "Z6", "--char", "2"]);
        assert_eq!(run(cli), EXIT_CONFIG);
        let cli = Cli::parse_from(["covlie", "verify", "--suite", "affine", "--group", "Z2xZ2"]);
        assert_eq!(run(cli), EXIT_CONFIG);
    }

    #[test]
    fn gs_suite_on_klein_group() {
        let r = cmd_verify(Suite::Gs, &"Z2xZ2".parse().unwrap(), 1, None, None).unwrap();
        assert!(r[0].passed());
        assert!(r[0]
            .find("g_S dimension")
            .unwrap()
            .note
            .as_deref()
            .unwrap()
            .contains("g_S = 0"));
    }

    #[test]
    fn covariant_suite_z3() {
        let r = cmd_verify(Suite::Covariant, &FinAbGroup::cyclic(3), 1, Some(2), None).unwrap();
        assert!(r[0].passed(), "{}", r[0].to_markdown());
    }

    #[test]
    fn grading_element_file_round_trip() {
        let dir = std::env::temp_dir().join(format!("covlie-h-{}", std::process::id()));
        std::fs::write(
            &dir,
            r#"{"scalar_order": 4, "coordinates": [[0, "z"], [2, "-1/2"]]}"#,
        )
        .unwrap();
        let h = read_grading_element(&dir).unwrap();
        std::fs::remove_file(&dir).ok();
        assert_eq!(h.get(0), Some(&CycNumber::root_of_unity(4, 1)));
        assert_eq!(h.get(2), Some(&CycNumber::from_ratio(-1, 2)));
    }
}
