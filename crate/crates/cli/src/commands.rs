use std::io::Write;
use std::path::Path;

use mfkit_core::algebra::Field;
use mfkit_core::bott::{
    bott, bott_vector, restricted_bott, rho_line_bundle, rho_point, rho_structure_sheaf, CohomologyVector,
};
use mfkit_core::mf::{fermat, MatrixFactorization, MfError};
use mfkit_core::orlov::{
    betti_to_table, check_bgs, check_rho, dual_table, phi0_residue, rho_of_mf, rho_of_table, shamash_degrees,
    sweep_rho_structure_sheaf, table_to_betti, CohomologyTable, HypersurfaceContext, Phi0Descriptor, SweepRow,
    UNCHECKED_HYPOTHESES,
};
use mfkit_core::Execution;
use serde_json::{json, Value};

use crate::document::{read_betti, read_mf, read_table, write_json, MfDocument, TableDocument};
use crate::error::CliError;
use crate::report::{count, digest, Report};
use crate::{BottCmd, CheckCmd, Cli, CliResult, Command, CtxArgs, MfCmd, OrlovCmd, RhoCmd, SweepCmd};

/// What a command produces besides its report.
enum Artifact {
    Mf(MfDocument),
    Table(TableDocument),
}

pub fn run(cli: &Cli) -> CliResult {
    match &cli.command {
        Command::Mf(cmd) => mf(cli, cmd),
        Command::Bott(cmd) => bott_cmd(cli, cmd),
        Command::Rho(cmd) => rho(cli, cmd),
        Command::Orlov(cmd) => orlov(cli, cmd),
        Command::Check(cmd) => check(cli, cmd),
        Command::Sweep(SweepCmd::RhoStructureSheaf { n_max, d_max }) => sweep(cli, *n_max, *d_max),
    }
}

fn bounded(name: &str, value: i64, lo: i64, hi: i64) -> Result<(), CliError> {
    if (lo..=hi).contains(&value) {
        Ok(())
    } else {
        Err(CliError::Usage(format!("--{name} must lie in [{lo}, {hi}], got {value}")))
    }
}

/// Context for the Bott-based counts, sized so every count fits in 128 bits.
fn small_ctx(args: &CtxArgs) -> Result<HypersurfaceContext, CliError> {
    bounded("n", args.n, 1, 16)?;
    bounded("d", args.d, 1, 32)?;
    Ok(HypersurfaceContext::new(args.n, args.d)?)
}

fn ctx(args: &CtxArgs) -> Result<HypersurfaceContext, CliError> {
    bounded("n", args.n, 1, 200)?;
    bounded("d", args.d, 1, 100_000)?;
    Ok(HypersurfaceContext::new(args.n, args.d)?)
}

fn start(cli: &Cli, operation: &str, ctx: Option<HypersurfaceContext>) -> Report {
    let mut r = Report::new(operation).context(ctx);
    if let Some(seed) = cli.seed {
        r.input("seed", seed);
    }
    r
}

fn file_input(report: &mut Report, key: &str, path: &Path, text: &str) {
    let name = path.file_name().map_or_else(|| path.display().to_string(), |n| n.to_string_lossy().into_owned());
    report.input(key, format!("{name} (sha256 {})", digest(text)));
}

fn write_out(path: &Path, text: &str) -> CliResult {
    std::fs::write(path, text).map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))
}

fn print(text: &str) -> CliResult {
    let mut out = std::io::stdout().lock();
    out.write_all(text.as_bytes()).map_err(|e| CliError::Io(format!("cannot write to stdout: {e}")))
}

/// Writes the artifact to `--output` (and the report to stdout), or, with
/// no artifact, the report to `--output`; otherwise prints the report with
/// the artifact embedded.
fn emit(cli: &Cli, mut report: Report, artifact: Option<Artifact>) -> CliResult {
    match (&cli.output, artifact) {
        (Some(path), Some(artifact)) => {
            match &artifact {
                Artifact::Mf(doc) => write_json(path, doc)?,
                Artifact::Table(doc) => write_json(path, doc)?,
            }
            report.result("written", path.display().to_string());
            print(&report.render(cli.json))
        }
        (Some(path), None) => write_out(path, &report.render(cli.json)),
        (None, artifact) => {
            match artifact {
                Some(Artifact::Mf(doc)) => report.result("document", serde_json::to_value(doc).expect("serializes")),
                Some(Artifact::Table(doc)) => report.result("document", serde_json::to_value(doc).expect("serializes")),
                None => {}
            }
            print(&report.render(cli.json))
        }
    }
}

/// `n = nvars − 1`, `d = deg f`, when that is a valid context.
fn mf_context(mf: &MatrixFactorization) -> Option<HypersurfaceContext> {
    HypersurfaceContext::new(mf.nvars() as i64 - 1, mf.degree() as i64).ok()
}

fn summarize(report: &mut Report, mf: &MatrixFactorization) {
    report.result("f", mf.f().to_string());
    report.result("field", mf.field().name());
    report.result("rank", mf.rank());
    report.result("F0_degrees", mf.f0_degrees().as_slice().to_vec());
    report.result("F1_degrees", mf.f1_degrees().as_slice().to_vec());
    report.result("reduced", mf.is_reduced());
    if mf.is_reduced() {
        report.result("betti", mf.betti().expect("reduced").to_string());
    }
}

fn parse_field(name: &str, p: Option<u64>) -> Result<Field, CliError> {
    match (name, p) {
        ("Q", None) => Ok(Field::Rational),
        ("Qi", None) => Ok(Field::GaussianRational),
        ("Fp", Some(p)) => Ok(Field::prime(p)?),
        ("Fp", None) => Err(CliError::Usage("--field Fp needs --p <prime>".into())),
        ("Q" | "Qi", Some(_)) => Err(CliError::Usage(format!("--p only applies to --field Fp, not {name}"))),
        (other, _) => Err(CliError::Usage(format!("unknown field {other:?}; use Q, Qi or Fp"))),
    }
}

fn mf(cli: &Cli, cmd: &MfCmd) -> CliResult {
    let transformed =
        |op: &str, file: &Path, f: &dyn Fn(&MatrixFactorization) -> Result<MatrixFactorization, CliError>| {
            let (input, text) = read_mf(file)?;
            let out = f(&input)?;
            let mut r = start(cli, op, mf_context(&out));
            file_input(&mut r, "file", file, &text);
            summarize(&mut r, &out);
            emit(cli, r, Some(Artifact::Mf(MfDocument::from_mf(&out))))
        };
    match cmd {
        MfCmd::Validate { file } => {
            let (mf, text) = read_mf(file)?;
            let mut r = start(cli, "mf validate", mf_context(&mf));
            file_input(&mut r, "file", file, &text);
            summarize(&mut r, &mf);
            r.verdict("valid", true);
            emit(cli, r, None)
        }
        MfCmd::Reduce { file } => transformed("mf reduce", file, &|m| Ok(m.reduce())),
        MfCmd::Shift { file } => transformed("mf shift", file, &|m| Ok(m.shift())),
        MfCmd::Twist { file, by } => {
            bounded("by", *by, -1_000_000, 1_000_000)?;
            transformed("mf twist", file, &|m| Ok(m.twist(*by)))
        }
        MfCmd::Dual { file } => transformed("mf dual", file, &|m| Ok(m.dual())),
        MfCmd::Tensor { left, right, normalize } => {
            let (a, ta) = read_mf(left)?;
            let (b, tb) = read_mf(right)?;
            let t = a.tensor(&b, *normalize)?;
            let mut r = start(cli, "mf tensor", mf_context(&t));
            file_input(&mut r, "left", left, &ta);
            file_input(&mut r, "right", right, &tb);
            r.input("normalize", *normalize);
            summarize(&mut r, &t);
            emit(cli, r, Some(Artifact::Mf(MfDocument::from_mf(&t))))
        }
        MfCmd::Betti { file, reduce } => {
            let (mf, text) = read_mf(file)?;
            let mf = if *reduce { mf.reduce() } else { mf };
            let betti = mf.betti()?;
            let mut r = start(cli, "mf betti", mf_context(&mf));
            file_input(&mut r, "file", file, &text);
            r.input("reduce", *reduce);
            r.result("betti", betti.to_string());
            r.result("total", betti.total());
            emit(cli, r, Some(Artifact::Table(TableDocument::from_betti(&betti))))
        }
        MfCmd::Fermat { pairs, half_degree, field, p, solo } => {
            bounded("pairs", i64::from(*pairs), 1, 6)?;
            bounded("half-degree", i64::from(*half_degree), 1, 8)?;
            let field = parse_field(field, *p)?;
            let g = fermat(field, *pairs, *half_degree, *solo).map_err(|e| match e {
                MfError::NoSquareRootOfMinusOne(_) => CliError::invalid("mf", format!("{e}; use a prime p = 1 mod 4")),
                other => other.into(),
            })?;
            let mut r = start(cli, "mf fermat", mf_context(&g));
            r.input("pairs", *pairs);
            r.input("half_degree", *half_degree);
            r.input("field", field.name());
            r.input("solo", *solo);
            summarize(&mut r, &g);
            emit(cli, r, Some(Artifact::Mf(MfDocument::from_mf(&g))))
        }
    }
}

fn vector_value(v: &CohomologyVector) -> Value {
    Value::Array(v.entries().iter().map(|&c| count(c)).collect())
}

fn bott_cmd(cli: &Cli, cmd: &BottCmd) -> CliResult {
    match *cmd {
        BottCmd::Eval { n, p, q, l } => {
            bounded("n", n, 1, 16)?;
            bounded("l", l, -64, 64)?;
            let mut r = start(cli, "bott eval", None);
            r.input("n", n);
            r.input("p", p);
            r.input("q", q);
            r.input("l", l);
            r.result("h", count(bott(n, p, q, l)));
            emit(cli, r, None)
        }
        BottCmd::Vector { n, p, l } => {
            bounded("n", n, 1, 16)?;
            bounded("l", l, -64, 64)?;
            let v = bott_vector(n, p, l);
            let mut r = start(cli, "bott vector", None);
            r.input("n", n);
            r.input("p", p);
            r.input("l", l);
            r.result("h", vector_value(&v));
            r.result("euler_characteristic", v.euler_characteristic().to_string());
            emit(cli, r, None)
        }
        BottCmd::Restricted { ctx: args, r: rr, t } => {
            let c = small_ctx(&args)?;
            bounded("r", rr, -64, 64)?;
            bounded("t", t, -64, 64)?;
            let v = restricted_bott(c.n(), c.d(), rr, t);
            let mut r = start(cli, "bott restricted", Some(c));
            r.input("r", rr);
            r.input("t", t);
            r.result("h", vector_value(&v));
            r.result("total", count(v.total()));
            r.result("euler_characteristic", v.euler_characteristic().to_string());
            r.unchecked(&UNCHECKED_HYPOTHESES[1..]);
            emit(cli, r, None)
        }
    }
}

fn rho_verdict(r: &mut Report, c: &HypersurfaceContext, value: u128) {
    match check_rho(c, value) {
        Ok(v) => {
            r.verdict("bound", count(v.bound));
            r.verdict("pass", v.pass);
        }
        Err(e) => r.diagnostic(format!("bound not checked: {e}")),
    }
}

fn rho(cli: &Cli, cmd: &RhoCmd) -> CliResult {
    match cmd {
        RhoCmd::StructureSheaf { ctx: args } => {
            bounded("n", args.n, 1, 30)?;
            bounded("d", args.d, 1, 60)?;
            let c = HypersurfaceContext::new(args.n, args.d)?;
            let value = rho_structure_sheaf(c.n(), c.d())?;
            let mut r = start(cli, "rho structure-sheaf", Some(c));
            r.result("rho", count(value));
            rho_verdict(&mut r, &c, value);
            r.unchecked(&UNCHECKED_HYPOTHESES[1..]);
            emit(cli, r, None)
        }
        RhoCmd::Point { n, d } => {
            bounded("n", *n, 1, 120)?;
            let c = match d {
                Some(d) => {
                    bounded("d", *d, 1, 100_000)?;
                    Some(HypersurfaceContext::new(*n, *d)?)
                }
                None => None,
            };
            let value = rho_point(*n);
            let mut r = start(cli, "rho point", c);
            r.input("n", *n);
            r.result("rho", count(value));
            if let Some(c) = c {
                rho_verdict(&mut r, &c, value);
            }
            emit(cli, r, None)
        }
        RhoCmd::LineBundle { ctx: args, j } => {
            let c = small_ctx(args)?;
            bounded("j", *j, -64, 64)?;
            let value = rho_line_bundle(c.n(), c.d(), *j);
            let mut r = start(cli, "rho line-bundle", Some(c));
            r.input("j", *j);
            r.result("rho", count(value));
            rho_verdict(&mut r, &c, value);
            r.unchecked(&UNCHECKED_HYPOTHESES[1..]);
            emit(cli, r, None)
        }
        RhoCmd::FromMf { file, reduce } => {
            let (mf, text) = read_mf(file)?;
            let mf = if *reduce { mf.reduce() } else { mf };
            let value = rho_of_mf(&mf)?;
            let c = mf_context(&mf);
            let mut r = start(cli, "rho from-mf", c);
            file_input(&mut r, "file", file, &text);
            r.input("reduce", *reduce);
            r.result("rank", mf.rank());
            r.result("rho", value);
            if let Some(c) = c.filter(|c| c.a() <= 0) {
                let table = betti_to_table(&c, &mf.betti()?)?;
                r.result("table_total", table.total());
                for d in table.diagnostics() {
                    r.diagnostic(d.to_string());
                }
            }
            match c {
                Some(c) => rho_verdict(&mut r, &c, u128::from(value)),
                None => r.diagnostic("no hypersurface context: f needs at least two variables"),
            }
            r.unchecked(&UNCHECKED_HYPOTHESES);
            emit(cli, r, None)
        }
        RhoCmd::FromTable { file } => {
            let (doc, text) = read_table(file)?;
            let table = doc.to_cohomology()?;
            let mut r = start(cli, "rho from-table", None);
            file_input(&mut r, "file", file, &text);
            r.input("n", table.n());
            r.result("rho", rho_of_table(&table));
            for d in table.diagnostics() {
                r.diagnostic(d.to_string());
            }
            emit(cli, r, None)
        }
    }
}

fn table_results(r: &mut Report, t: &CohomologyTable) {
    r.result("table", t.to_string());
    r.result("total", t.total());
    for d in t.diagnostics() {
        r.diagnostic(d.to_string());
    }
}

fn orlov(cli: &Cli, cmd: &OrlovCmd) -> CliResult {
    match cmd {
        OrlovCmd::Translate { ctx: args, file } => {
            let c = ctx(args)?;
            let (betti, text) = read_betti(file)?;
            let table = betti_to_table(&c, &betti)?;
            let mut r = start(cli, "orlov translate", Some(c));
            file_input(&mut r, "file", file, &text);
            r.input("betti", betti.to_string());
            table_results(&mut r, &table);
            r.unchecked(&UNCHECKED_HYPOTHESES);
            emit(cli, r, Some(Artifact::Table(TableDocument::from_cohomology(&table))))
        }
        OrlovCmd::Invert { ctx: args, file } => {
            let c = ctx(args)?;
            let (doc, text) = read_table(file)?;
            let table = doc.to_cohomology()?;
            let betti = table_to_betti(&c, &table)?;
            let mut r = start(cli, "orlov invert", Some(c));
            file_input(&mut r, "file", file, &text);
            r.input("table", table.to_string());
            r.result("betti", betti.to_string());
            r.result("total", betti.total());
            r.unchecked(&UNCHECKED_HYPOTHESES);
            emit(cli, r, Some(Artifact::Table(TableDocument::from_betti(&betti))))
        }
        OrlovCmd::DualTable { ctx: args, file } => {
            let c = ctx(args)?;
            let (doc, text) = read_table(file)?;
            let table = doc.to_cohomology()?;
            let dual = dual_table(&c, &table)?;
            let mut r = start(cli, "orlov dual-table", Some(c));
            file_input(&mut r, "file", file, &text);
            r.input("table", table.to_string());
            table_results(&mut r, &dual);
            r.unchecked(&UNCHECKED_HYPOTHESES);
            emit(cli, r, Some(Artifact::Table(TableDocument::from_cohomology(&dual))))
        }
        OrlovCmd::Phi0 { ctx: args, l } => {
            let c = ctx(args)?;
            bounded("l", *l, -1_000_000_000, 1_000_000_000)?;
            let desc = phi0_residue(&c, *l)?;
            let mut r = start(cli, "orlov phi0", Some(c));
            r.input("l", *l);
            r.result("descriptor", desc.to_string());
            match desc {
                Phi0Descriptor::Zero => r.result("zero", true),
                Phi0Descriptor::Bundle { exterior_power, twist, shift } => {
                    r.result("zero", false);
                    r.result("exterior_power", exterior_power);
                    r.result("twist", twist);
                    r.result("shift", shift);
                }
            }
            r.unchecked(&UNCHECKED_HYPOTHESES[1..]);
            emit(cli, r, None)
        }
        OrlovCmd::Shamash { ctx: args, m } => {
            bounded("n", args.n, 1, 120)?;
            bounded("d", args.d, 1, 100_000)?;
            bounded("m", *m, -240, 240)?;
            let c = HypersurfaceContext::new(args.n, args.d)?;
            let s = shamash_degrees(c.n(), c.d(), *m)?;
            let mut r = start(cli, "orlov shamash", Some(c));
            r.input("m", *m);
            r.result("degrees", s.to_string());
            let pairs: Vec<Value> =
                s.iter().map(|(deg, mult)| json!({"degree": deg, "multiplicity": count(mult)})).collect();
            r.result("terms", pairs);
            r.result("total_rank", count(s.total_rank()));
            emit(cli, r, None)
        }
    }
}

fn check(cli: &Cli, cmd: &CheckCmd) -> CliResult {
    match cmd {
        CheckCmd::Bgs { ctx: args, file } => {
            let c = ctx(args)?;
            bounded("n", args.n, 1, 250)?;
            let (mf, text) = read_mf(file)?;
            let v = check_bgs(&c, &mf);
            let mut r = start(cli, "check bgs", Some(c));
            file_input(&mut r, "file", file, &text);
            r.result("rank", v.rank);
            r.result("reduced_rank", v.reduced_rank);
            r.verdict("bound", count(v.bound));
            r.verdict("trivial", v.trivial);
            r.verdict("pass", v.pass);
            for note in &v.notes {
                r.diagnostic(note.clone());
            }
            r.unchecked(&UNCHECKED_HYPOTHESES);
            emit(cli, r, None)
        }
        CheckCmd::Rho { ctx: args, value } => {
            let c = ctx(args)?;
            bounded("n", args.n, 1, 250)?;
            let v = check_rho(&c, *value)?;
            let mut r = start(cli, "check rho", Some(c));
            r.input("value", count(*value));
            r.verdict("bound", count(v.bound));
            r.verdict("pass", v.pass);
            r.unchecked(&UNCHECKED_HYPOTHESES);
            emit(cli, r, None)
        }
    }
}

/// Rows in `(n, d)` order; `MFKIT_THREADS` caps the worker count.
fn sweep_rows(n_max: i64, d_max: i64) -> Result<Vec<SweepRow>, CliError> {
    let threads = match std::env::var("MFKIT_THREADS") {
        Ok(v) => Some(
            v.trim()
                .parse::<usize>()
                .ok()
                .filter(|&k| k >= 1)
                .ok_or_else(|| CliError::Usage(format!("MFKIT_THREADS must be a positive integer, got {v:?}")))?,
        ),
        Err(_) => None,
    };
    #[cfg(feature = "parallel")]
    if let Some(k) = threads {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build()
            .map_err(|e| CliError::Io(format!("cannot start {k} worker threads: {e}")))?;
        return Ok(pool.install(|| sweep_rho_structure_sheaf(n_max, d_max, Execution::Parallel)));
    }
    #[cfg(not(feature = "parallel"))]
    let _ = threads;
    Ok(sweep_rho_structure_sheaf(n_max, d_max, Execution::default()))
}

fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["n", "d", "a", "e", "rho", "bound", "pass"]).expect("in-memory write");
    for row in rows {
        let c = row.ctx;
        w.write_record([
            c.n().to_string(),
            c.d().to_string(),
            c.a().to_string(),
            c.e().to_string(),
            row.rho.to_string(),
            row.verdict.bound.to_string(),
            row.verdict.pass.to_string(),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ASCII output")
}

fn sweep(cli: &Cli, n_max: i64, d_max: i64) -> CliResult {
    bounded("n-max", n_max, 1, 30)?;
    bounded("d-max", d_max, 1, 60)?;
    let rows = sweep_rows(n_max, d_max)?;
    let csv = sweep_csv(&rows);
    let mut r = start(cli, "sweep rho-structure-sheaf", None);
    r.input("n_max", n_max);
    r.input("d_max", d_max);
    r.result("cells", rows.len());
    r.result("passed", rows.iter().filter(|row| row.verdict.pass).count());
    r.unchecked(&UNCHECKED_HYPOTHESES[1..]);
    match &cli.output {
        Some(path) => {
            write_out(path, &csv)?;
            r.result("written", path.display().to_string());
            print(&r.render(cli.json))
        }
        None if cli.json => {
            let rows: Vec<Value> = rows
                .iter()
                .map(|row| {
                    let c = row.ctx;
                    json!({"n": c.n(), "d": c.d(), "a": c.a(), "e": c.e(), "rho": count(row.rho),
                           "bound": count(row.verdict.bound), "pass": row.verdict.pass})
                })
                .collect();
            r.result("rows", rows);
            print(&r.render(true))
        }
        None => print(&csv),
    }
}
