//! The `so3cover` command line. [`run`] is pure: it takes the argument
//! vector and returns the exit code and both output streams, so the binary
//! is a thin wrapper and tests can drive it in-process.
//!
//! Exit codes: `0` success, `1` domain error (the computation is not
//! defined for these inputs, or a check failed), `2` usage error.

use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::congruence::{
    check_kappa_congruence, check_root_of_unity_congruence, cm_bound, orbit_congruence_check, random_orbit_instance,
    CongruenceVerdict,
};
use crate::cyclotomic::{is_odd_prime, valuation_num, CycInt, Valuation};
use crate::invariants::{homology_from_matrix, invariant_mtilde, invariant_valuation, linking_matrix_mp};
use crate::linkform::{parse_character, parse_class, parse_form, Character, H1Class, Homology1};
use crate::skein::Level;

/// Environment variable holding the default output format.
pub const FORMAT_ENV: &str = "SO3COVER_FORMAT";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "so3cover",
    version,
    about = "Exact SO(3) invariants, congruence checks and linking-form cover analysis"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, env = FORMAT_ENV, default_value = "text")]
    format: Format,
    /// Shorthand for `--format json`.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// The invariant of the surgered cover at p, its residue verdicts and valuation.
    Invariant(PrimeArg),
    /// Bracket of the n-component positive Hopf link, all framings +1.
    Hopf {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: usize,
    },
    /// (1-ζ_p)-adic valuation of the invariant against the bound and p-1.
    Valuation(PrimeArg),
    /// First homology presented by a square integer matrix, rows separated by ';'.
    Homology {
        #[arg(long, allow_hyphen_values = true)]
        matrix: String,
    },
    /// Cyclic covers classified by a character.
    Cover {
        #[command(subcommand)]
        command: CoverCommand,
    },
    /// Verify the orbit-collapse congruence on random instances.
    OrbitCheck {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        colors: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Ring Z[ζ_N] for the random weights and orbit values.
        #[arg(long, default_value_t = 20)]
        modulus: u64,
        #[arg(long, default_value_t = 1)]
        trials: usize,
        /// Coefficients are drawn from -bound..=bound.
        #[arg(long, default_value_t = 3)]
        bound: i64,
    },
}

#[derive(Debug, Args)]
struct PrimeArg {
    #[arg(long)]
    p: u64,
}

#[derive(Debug, Subcommand)]
enum CoverCommand {
    /// Simplicity, Bockstein image, curve choices and complement tests.
    Analyze {
        /// Wall form, e.g. "A25+A5+B5[2]".
        #[arg(long)]
        form: String,
        /// Character, e.g. "free:0,0;tors:1/5,0,2/5"; optional "k:25;" target.
        #[arg(long = "char")]
        character: String,
        /// Classes of H_1, e.g. "free:1,0;tors:5,0,0"; repeatable.
        #[arg(long = "curves", num_args = 1..)]
        curves: Vec<String>,
        /// The prime, needed only when the form is trivial.
        #[arg(long)]
        p: Option<u64>,
    },
}

enum Failure {
    Usage(String),
    Domain(String),
}

type Report = (String, Value);

pub fn run(args: &[String]) -> Outcome {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let format = if cli.json { Format::Json } else { cli.format };
    let result = match cli.command {
        Command::Invariant(a) => invariant(a.p),
        Command::Hopf { p, n } => hopf(p, n),
        Command::Valuation(a) => valuation(a.p),
        Command::Homology { matrix } => homology(&matrix),
        Command::Cover { command: CoverCommand::Analyze { form, character, curves, p } } => {
            cover(&form, &character, &curves, p)
        }
        Command::OrbitCheck { p, colors, seed, modulus, trials, bound } => {
            orbit_check(p, colors, seed, modulus, trials, bound)
        }
    };
    match result {
        Ok((ok, text, value)) => {
            let stdout = match format {
                Format::Text => text,
                Format::Json => format!("{}\n", serde_json::to_string_pretty(&value).expect("serialisable")),
            };
            Outcome { code: if ok { 0 } else { 1 }, stdout, stderr: String::new() }
        }
        Err(Failure::Usage(m)) => Outcome { code: 2, stdout: String::new(), stderr: format!("error: {m}\n") },
        Err(Failure::Domain(m)) => Outcome { code: 1, stdout: String::new(), stderr: format!("error: {m}\n") },
    }
}

fn domain(e: impl std::fmt::Display) -> Failure {
    Failure::Domain(e.to_string())
}

fn quantum_prime(p: u64) -> Result<Level, Failure> {
    if !is_odd_prime(p) || p < 5 {
        return Err(Failure::Usage(format!("--p must be a prime >= 5, got {p}")));
    }
    Level::new(p).map_err(domain)
}

fn ok((text, value): Report) -> Result<(bool, String, Value), Failure> {
    Ok((true, text, value))
}

fn verdict_line(v: &CongruenceVerdict, what: &str, p: u64) -> String {
    match v.witness {
        Some((m, n)) => format!("congruent to {what} mod {p} (m = {m}, n = {n}; {} candidates)", v.candidates_checked),
        None => format!("NOT congruent to {what} mod {p} ({} candidates checked)", v.candidates_checked),
    }
}

fn invariant(p: u64) -> Result<(bool, String, Value), Failure> {
    let level = quantum_prime(p)?;
    let kappa = level.kappa();
    let n = level.modulus();
    let homology = homology_from_matrix(&linking_matrix_mp(p)).map_err(domain)?;
    let mut text = String::new();
    let a = match n / (2 * p) {
        1 => String::new(),
        e => format!("^{e}"),
    };
    let _ = writeln!(text, "p = {p}, ring Z[ζ{n}], A = ζ{n}{a}");
    let pin = if kappa.pinned { "pinned" } else { "general-p choice, not canonical" };
    let _ = writeln!(text, "κ = ζ{n}^{} ({pin})", kappa.zeta_exponent);
    let kappa_json = json!({"modulus": n, "zeta_exponent": kappa.zeta_exponent, "pinned": kappa.pinned});

    let (value_json, value_text, congruence, phase_free, valuation) = match invariant_mtilde(p) {
        Ok(value) => {
            let strict = check_kappa_congruence(&value, p).map_err(domain)?;
            let loose = check_root_of_unity_congruence(&value, p).map_err(domain)?;
            let v = valuation_num(&value).map_err(domain)?;
            let _ = writeln!(text, "⟨M̃_{p}⟩ = {value}");
            let _ = writeln!(text, "residue: {}", value.numerator().mod_p(p));
            let _ = writeln!(text, "{}", verdict_line(&strict, "κ^m·n", p));
            let _ = writeln!(text, "phase-free: {}", verdict_line(&loose, &format!("ζ{n}^m·n"), p));
            (json!(value), json!(value.to_string()), json!(strict), json!(loose), v)
        }
        Err(_) => {
            // no signed η: only the phase-free valuation is available
            let v = invariant_valuation(p).map_err(domain)?;
            let _ = writeln!(text, "⟨M̃_{p}⟩: no signed normalisation at this prime; value not computed");
            let in_p = v.at_least(p as i64 - 1);
            let derived = |candidates: usize| {
                json!({"congruent": if in_p { json!(true) } else { Value::Null },
                       "witness": if in_p { json!({"m": 0, "n": 0}) } else { Value::Null },
                       "candidates_checked": candidates, "method": "valuation"})
            };
            if in_p {
                let _ = writeln!(text, "congruent to κ^m·n mod {p} (m = 0, n = 0; from the valuation)");
            } else {
                let _ = writeln!(text, "congruence undetermined without the signed value");
            }
            (Value::Null, Value::Null, derived(0), derived(0), v)
        }
    };
    let _ = writeln!(text, "valuation at (1-ζ{p}): {valuation}");
    let _ = writeln!(text, "H_1(M_{p}) = {homology}");
    ok((
        text,
        json!({
            "p": p,
            "modulus": n,
            "kappa": kappa_json,
            "value": value_json,
            "value_text": value_text,
            "congruence": congruence,
            "phase_free_congruence": phase_free,
            "valuation": valuation,
            "homology": homology,
        }),
    ))
}

fn hopf(p: u64, n: usize) -> Result<(bool, String, Value), Failure> {
    let level = quantum_prime(p)?;
    let h = level.hopf_bracket(n);
    ok((format!("H_{n} = {h}\n"), json!({"p": p, "n": n, "value": h, "value_text": h.to_string()})))
}

fn valuation(p: u64) -> Result<(bool, String, Value), Failure> {
    quantum_prime(p)?;
    let v = invariant_valuation(p).map_err(domain)?;
    let bound = cm_bound(p);
    let meets = |b: u64| v.at_least(b as i64);
    let text = format!(
        "valuation at (1-ζ{p}): {v}\nbound ⌈(p²-7p+12)/6⌉ = {bound}: {}\np-1 = {}: {}\n",
        if meets(bound) { "met" } else { "NOT met" },
        p - 1,
        if meets(p - 1) { format!("met, value lies in {p}·O_{p}") } else { "NOT met".into() },
    );
    let finite = |v: Valuation| v.finite().map_or(Value::String("inf".into()), Value::from);
    ok((
        text,
        json!({"p": p, "valuation": finite(v), "cm_bound": bound, "meets_cm_bound": meets(bound),
               "p_minus_1": p - 1, "in_p_ideal": meets(p - 1)}),
    ))
}

fn parse_matrix(s: &str) -> Result<Vec<Vec<BigInt>>, Failure> {
    s.split(';')
        .map(|row| {
            row.split(',')
                .map(|x| x.trim().parse::<BigInt>().map_err(|_| Failure::Usage(format!("bad matrix entry {x:?}"))))
                .collect()
        })
        .collect()
}

fn homology(matrix: &str) -> Result<(bool, String, Value), Failure> {
    let m = parse_matrix(matrix)?;
    let g = homology_from_matrix(&m).map_err(|e| Failure::Usage(e.to_string()))?;
    ok((format!("{g}\n"), json!(g)))
}

fn cover(form: &str, character: &str, curves: &[String], p: Option<u64>) -> Result<(bool, String, Value), Failure> {
    let usage = |e: crate::linkform::FormError| Failure::Usage(e.to_string());
    let form = parse_form(form, p).map_err(usage)?;
    if p.is_some_and(|p| p != form.p()) {
        return Err(Failure::Usage(format!("--p disagrees with the form's prime {}", form.p())));
    }
    let free_rank = free_count(character);
    let h = Homology1::new(free_rank, form);
    let chi = parse_character(&h, character).map_err(usage)?;
    let classes: Vec<H1Class> = curves.iter().map(|c| parse_class(&h, c)).collect::<Result<_, _>>().map_err(usage)?;

    let simple = h.is_simple(&chi).map_err(domain)?;
    let beta = h.bockstein(&chi).map_err(domain)?;
    let p = h.form.p();
    let mut text = String::new();
    let _ = writeln!(text, "H_1: free rank {free_rank}, torsion form {}", h.form);
    let _ = writeln!(text, "character of order {} into Z_{}", chi.order(), chi.target);
    let _ = writeln!(text, "simple: {}", if simple { "yes" } else { "no" });
    let _ = writeln!(text, "β(χ) = {beta}");

    let mut out = json!({"form": h.form, "free_rank": free_rank, "character": chi_json(&chi),
                         "simple": simple, "bockstein": beta});
    let order = chi.order();
    let choices = if order == p {
        Some(("scc", h.scc_curves(&chi).map_err(domain)?))
    } else if order == p * p && chi.target == p * p {
        Some(("scc2", h.scc2_curves(&chi).map_err(domain)?))
    } else {
        None
    };
    if let Some((name, list)) = choices {
        for c in &list {
            let _ = writeln!(
                text,
                "{name} curve on summand {}: x = {}, b(β, x) = {}, χ(x) = {} in Z_{}",
                c.summand, c.element, c.pairing, c.chi_value, chi.target
            );
        }
        out[name] = json!(list);
    }
    if !classes.is_empty() {
        let complement = h.complement_simple(&chi, &classes).map_err(domain)?;
        let values: Vec<String> = classes.iter().map(|c| chi.value(c).to_string()).collect();
        let _ = writeln!(text, "simple on the complement of the curves: {}", if complement { "yes" } else { "no" });
        let _ = writeln!(text, "χ on the curves: {}", values.join(", "));
        out["complement_simple"] = json!(complement);
        out["chi_on_curves"] = json!(values);
    }
    ok((text, out))
}

fn chi_json(chi: &Character) -> Value {
    json!({"target": chi.target, "order": chi.order(), "free": chi.free, "torsion": chi.torsion})
}

fn free_count(character: &str) -> usize {
    character
        .split(';')
        .filter_map(|s| s.trim().strip_prefix("free:"))
        .map(|v| if v.trim().is_empty() { 0 } else { v.split(',').count() })
        .next_back()
        .unwrap_or(0)
}

fn orbit_check(
    p: u64,
    colours: usize,
    seed: u64,
    modulus: u64,
    trials: usize,
    bound: i64,
) -> Result<(bool, String, Value), Failure> {
    if !is_odd_prime(p) {
        return Err(Failure::Usage(format!("--p must be an odd prime, got {p}")));
    }
    if modulus == 0 || bound < 0 {
        return Err(Failure::Usage("--modulus must be positive and --bound nonnegative".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut text = String::new();
    let mut reports = Vec::new();
    let mut all = true;
    for t in 0..trials {
        let (w, x) = random_orbit_instance(&mut rng, modulus, p, colours, bound).map_err(domain)?;
        let r = orbit_congruence_check(&w, &x, p).map_err(domain)?;
        all &= r.congruent;
        let diff: CycInt = &r.lhs - &r.rhs;
        let _ = writeln!(
            text,
            "trial {t}: {} sequences, {} orbits, LHS ≡ RHS mod {p}: {} (LHS - RHS = {diff})",
            r.sequences,
            r.orbits,
            if r.congruent { "yes" } else { "NO" }
        );
        reports.push(r);
    }
    let _ = writeln!(text, "{}", if all { "all instances verify" } else { "FAILED: congruence violated" });
    Ok((
        all,
        text,
        json!({"p": p, "colors": colours, "seed": seed, "modulus": modulus, "all_congruent": all, "trials": reports}),
    ))
}
