mod table;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hecke_core::arith::{self, Parity};
use hecke_core::census::Census;
use hecke_core::gf2;
use hecke_core::oracle::{self, BUDGET_ENV, DEFAULT_BUDGET};
use hecke_core::parity::{self, Clause, Form};
use hecke_core::verify::{self, Level};
use hecke_core::wreath;
use hecke_core::{Error, Exec, HParams};

use table::{Cell, Format, Table};

#[derive(Parser)]
#[command(name = "hecke", version, about = "Subgroup counts and parity laws for C2 * Cq and its lifts")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format: CSV with a header row, or one JSON object per line.
    #[arg(long, value_enum, global = true, default_value = "csv")]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Exact counts from the closed formulas.
    #[command(subcommand)]
    Census(CensusCmd),
    /// Brute-force enumeration of transitive permutation pairs.
    #[command(subcommand)]
    Oracle(OracleCmd),
    /// Generalized counts s^H(n) and their generating series.
    #[command(subcommand)]
    Wreath(WreathCmd),
    /// The determinant Δ_q and its minors over GF(2)[z].
    #[command(subcommand)]
    Gf2(Gf2Cmd),
    /// Parity predicates.
    #[command(subcommand)]
    Parity(ParityCmd),
    /// Run the cross-check suite: `all` or one module.
    Verify {
        target: String,
        #[arg(long, value_enum, default_value = "quick")]
        level: LevelArg,
    },
}

#[derive(Args)]
struct QRange {
    #[arg(long)]
    q: u64,
    #[arg(long, default_value_t = 1)]
    n_min: u64,
    #[arg(long)]
    n_max: u64,
}

#[derive(Args)]
struct Group {
    /// |H|
    #[arg(long)]
    h: Option<u64>,
    /// Number of solutions of x^2 = 1 in H.
    #[arg(long)]
    a: Option<u64>,
    /// Number of solutions of x^q = 1 in H.
    #[arg(long)]
    b: Option<u64>,
    /// `trivial` or `cyclic:<r>`.
    #[arg(long, conflicts_with_all = ["h", "a", "b"])]
    group: Option<String>,
}

#[derive(Subcommand)]
enum CensusCmd {
    /// s_q(n), all subgroups of index n.
    Sq(QRange),
    /// M_q(n), subgroups with μ = 0.
    Mq(QRange),
    /// N_q(n), subgroups with λ = ν = 0.
    Nq(QRange),
    /// f_q(n), free subgroups.
    Fq(QRange),
    /// Counts per Kurosh type (λ, μ, ν) at one index.
    Type {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: u64,
    },
    /// Tree-like coset diagrams M_q(qk; k−1, k) for k ≤ k_max.
    Tree {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        k_max: u64,
    },
}

#[derive(Subcommand)]
enum OracleCmd {
    /// Counts per Kurosh type at one index.
    Types {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: u64,
    },
    /// s, M, N, f and s^H per index.
    Counts {
        #[command(flatten)]
        range: QRange,
        #[command(flatten)]
        group: Group,
    },
}

#[derive(Subcommand)]
enum WreathCmd {
    /// s^H(n) via the wreath product recurrence.
    Sgen {
        #[command(flatten)]
        range: QRange,
        #[command(flatten)]
        group: Group,
    },
    /// s^H(n) for q = 3 from the closed recurrence.
    S3rec {
        #[arg(long, default_value_t = 1)]
        n_min: u64,
        #[arg(long)]
        n_max: u64,
        #[command(flatten)]
        group: Group,
    },
    /// Coefficients of Σ s^H(n+1) z^n, or of F_k with --k.
    Series {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        order: usize,
        #[arg(long, allow_negative_numbers = true)]
        k: Option<i64>,
        #[command(flatten)]
        group: Group,
    },
}

#[derive(Subcommand)]
enum Gf2Cmd {
    /// det Δ_q mod 2 next to its stated value.
    Det {
        #[arg(long)]
        q: u64,
        #[command(flatten)]
        group: Group,
    },
    /// Minors Δ_{κ,0} mod 2 next to their stated values.
    Minors {
        #[arg(long)]
        q: u64,
        #[command(flatten)]
        group: Group,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum HParity {
    Even,
    Odd,
}

#[derive(Subcommand)]
enum ParityCmd {
    /// Parity of s_q(n).
    Sq {
        #[command(flatten)]
        range: QRange,
        #[arg(long)]
        odd_only: bool,
    },
    /// Parity of N_q(n).
    Nq {
        #[command(flatten)]
        range: QRange,
        #[arg(long)]
        odd_only: bool,
    },
    /// Parity of the lifted count s^H(n) for C_2m *_{C_m} C_qm.
    Lifted {
        #[command(flatten)]
        range: QRange,
        #[arg(long)]
        m: u64,
        /// Parity of |H|.
        #[arg(long, value_enum)]
        h: HParity,
        #[arg(long)]
        odd_only: bool,
    },
    /// Fermat-prime closed form of the lifted parity.
    Fermat {
        #[command(flatten)]
        range: QRange,
        #[arg(long)]
        m: u64,
        #[arg(long, value_enum)]
        h: HParity,
        #[arg(long)]
        odd_only: bool,
    },
    /// Whether q/2 mod p avoids the powers of q − 1, for odd primes p < p_max.
    Cq {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        p_max: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum LevelArg {
    Quick,
    Full,
}

/// A failed run: argument problems exit 2, failed checks exit 1.
enum Failure {
    Usage(String),
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        match e {
            Error::Consistency(_) => Failure::Verification(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type Out = Result<Table, Failure>;

fn usage<T>(msg: impl Into<String>) -> Result<T, Failure> {
    Err(Failure::Usage(msg.into()))
}

fn check_q(q: u64) -> Result<(), Failure> {
    arith::check_odd_prime(q)?;
    Ok(())
}

fn check_range(r: &QRange) -> Result<(), Failure> {
    check_q(r.q)?;
    if r.n_min == 0 || r.n_min > r.n_max {
        return usage(format!("need 1 <= n-min <= n-max, got {}..{}", r.n_min, r.n_max));
    }
    Ok(())
}

fn budget() -> Result<u64, Failure> {
    match std::env::var(BUDGET_ENV) {
        Err(_) => Ok(DEFAULT_BUDGET),
        Ok(v) => v
            .trim()
            .parse()
            .or_else(|_| usage(format!("{BUDGET_ENV} must be a non-negative integer, got {v:?}"))),
    }
}

fn hparams(g: &Group, q: u64) -> Result<HParams, Failure> {
    if let Some(spec) = &g.group {
        if spec == "trivial" {
            return Ok(HParams::trivial());
        }
        let r = spec
            .strip_prefix("cyclic:")
            .and_then(|r| r.parse().ok())
            .ok_or_else(|| Failure::Usage(format!("unknown group {spec:?}; use trivial or cyclic:<r>")))?;
        return Ok(HParams::cyclic(r, q)?);
    }
    match (g.h, g.a, g.b) {
        (None, None, None) => Ok(HParams::trivial()),
        (Some(h), Some(a), Some(b)) => Ok(HParams::new(h, a, b)?),
        _ => usage("--h, --a and --b must be given together"),
    }
}

fn group_cells(hp: HParams) -> Vec<Cell> {
    vec![hp.h().into(), hp.a().into(), hp.b().into()]
}

fn census_cmd(cmd: CensusCmd) -> Out {
    let mut c = Census::new();
    let series = |r: QRange, f: &mut dyn FnMut(&mut Census, u64, u64) -> Result<arith::Nat, Error>| -> Out {
        check_range(&r)?;
        let mut c = Census::new();
        let mut t = Table::new(&["q", "n", "count"]);
        for n in r.n_min..=r.n_max {
            t.push(vec![r.q.into(), n.into(), f(&mut c, r.q, n)?.into()]);
        }
        Ok(t)
    };
    match cmd {
        CensusCmd::Sq(r) => series(r, &mut |c, q, n| c.s_total(q, n)),
        CensusCmd::Mq(r) => series(r, &mut |c, q, n| Ok(c.mq_count(q, n))),
        CensusCmd::Nq(r) => series(r, &mut |c, q, n| Ok(c.n_count(q, n))),
        CensusCmd::Fq(r) => series(r, &mut |c, q, n| Ok(c.f_count(q, n))),
        CensusCmd::Type { q, n } => {
            check_q(q)?;
            if n == 0 {
                return usage("index n must be positive");
            }
            let mut t = Table::new(&["q", "n", "lambda", "mu", "nu", "count"]);
            for (k, v) in c.types(q, n)?.counts {
                t.push(vec![q.into(), n.into(), k.lambda.into(), k.mu.into(), k.nu.into(), v.into()]);
            }
            Ok(t)
        }
        CensusCmd::Tree { q, k_max } => {
            check_q(q)?;
            let mut t = Table::new(&["q", "k", "count"]);
            for k in 1..=k_max {
                t.push(vec![q.into(), k.into(), c.m_core(q, k, k - 1)?.into()]);
            }
            Ok(t)
        }
    }
}

fn oracle_cmd(cmd: OracleCmd) -> Out {
    let budget = budget()?;
    match cmd {
        OracleCmd::Types { q, n } => {
            check_q(q)?;
            if n == 0 {
                return usage("index n must be positive");
            }
            let mut t = Table::new(&["q", "n", "lambda", "mu", "nu", "count"]);
            for (k, v) in oracle::enumerate_types(q, n, budget)?.counts {
                t.push(vec![q.into(), n.into(), k.lambda.into(), k.mu.into(), k.nu.into(), v.into()]);
            }
            Ok(t)
        }
        OracleCmd::Counts { range, group } => {
            check_range(&range)?;
            let hp = hparams(&group, range.q)?;
            let q = range.q;
            let mut t = Table::new(&["q", "n", "s", "m", "nq", "f", "h", "a", "b", "s_h"]);
            for n in range.n_min..=range.n_max {
                let c = oracle::enumerate_types(q, n, budget)?;
                let mut row: Vec<Cell> = vec![
                    q.into(),
                    n.into(),
                    c.total().into(),
                    c.total_where(|k| k.mu == 0).into(),
                    c.total_where(|k| k.lambda == 0 && k.nu == 0).into(),
                    c.total_where(|k| k.lambda == 0 && k.mu == 0).into(),
                ];
                row.extend(group_cells(hp));
                row.push(oracle::oracle_sh(q, n, hp, budget)?.into());
                t.push(row);
            }
            Ok(t)
        }
    }
}

fn wreath_cmd(cmd: WreathCmd) -> Out {
    match cmd {
        WreathCmd::Sgen { range, group } => {
            check_range(&range)?;
            let hp = hparams(&group, range.q)?;
            let seq = wreath::s_general_seq(range.q, hp, range.n_max as usize)?;
            let mut t = Table::new(&["q", "h", "a", "b", "n", "count"]);
            for n in range.n_min..=range.n_max {
                let mut row: Vec<Cell> = vec![range.q.into()];
                row.extend(group_cells(hp));
                row.extend([n.into(), (&seq[n as usize]).into()]);
                t.push(row);
            }
            Ok(t)
        }
        WreathCmd::S3rec { n_min, n_max, group } => {
            if n_min == 0 || n_min > n_max {
                return usage(format!("need 1 <= n-min <= n-max, got {n_min}..{n_max}"));
            }
            let hp = hparams(&group, 3)?;
            let seq = wreath::s3h_rec_seq(hp, n_max as usize);
            let mut t = Table::new(&["h", "a", "b", "n", "count"]);
            for n in n_min..=n_max {
                let mut row = group_cells(hp);
                row.extend([n.into(), Cell::Big(seq[n as usize].to_string())]);
                t.push(row);
            }
            Ok(t)
        }
        WreathCmd::Series { q, order, k, group } => {
            check_q(q)?;
            let hp = hparams(&group, q)?;
            let s = match k {
                Some(k) => wreath::f_series(k, q, hp, order)?,
                None => wreath::s_series(q, hp, order)?,
            };
            let mut t = Table::new(&["q", "h", "a", "b", "series", "power", "coeff"]);
            let name = k.map_or("S".to_string(), |k| format!("F{k}"));
            for (i, c) in s.coeffs().iter().enumerate() {
                let mut row: Vec<Cell> = vec![q.into()];
                row.extend(group_cells(hp));
                row.extend([name.as_str().into(), (i as u64).into(), Cell::Big(c.to_string())]);
                t.push(row);
            }
            Ok(t)
        }
    }
}

fn gf2_cmd(cmd: Gf2Cmd) -> Out {
    let (q, group, minors) = match cmd {
        Gf2Cmd::Det { q, group } => (q, group, false),
        Gf2Cmd::Minors { q, group } => (q, group, true),
    };
    check_q(q)?;
    let hp = hparams(&group, q)?;
    let m = gf2::build_delta(q, hp)?;
    let h_even = hp.h_even();
    if !minors {
        let mut t = Table::new(&["q", "h", "a", "b", "det", "stated", "agrees"]);
        let (got, want) = (gf2::det_gf2(&m), gf2::predicted_det(q, h_even));
        let mut row: Vec<Cell> = vec![q.into()];
        row.extend(group_cells(hp));
        row.extend([got.to_string().into(), want.to_string().into(), (got == want).into()]);
        t.push(row);
        return Ok(t);
    }
    let mut t = Table::new(&["q", "h", "a", "b", "kappa", "minor", "stated", "agrees"]);
    for kappa in 0..=q - 2 {
        let got = gf2::minor_gf2(&m, kappa as usize, 0);
        let want = gf2::predicted_minor(q, kappa, h_even);
        let mut row: Vec<Cell> = vec![q.into()];
        row.extend(group_cells(hp));
        row.extend([kappa.into(), got.to_string().into(), want.to_string().into(), (got == want).into()]);
        t.push(row);
    }
    Ok(t)
}

fn form_name(f: Form) -> &'static str {
    match f {
        Form::Odd => "1+2(q-1)eta",
        Form::Even => "2+4(q-1)eta",
    }
}

fn clause_name(c: Clause) -> &'static str {
    match c {
        Clause::Doubled => "doubled",
        Clause::Plain => "plain",
    }
}

fn parity_cmd(cmd: ParityCmd) -> Out {
    match cmd {
        ParityCmd::Sq { range, odd_only } => index_parity(range, odd_only, parity::sq_parity),
        ParityCmd::Nq { range, odd_only } => index_parity(range, odd_only, parity::nq_parity),
        ParityCmd::Lifted { range, m, h, odd_only } => {
            check_range(&range)?;
            let h_even = h == HParity::Even;
            let all = parity::lift_parity_range(range.q, m, range.n_max, h_even, Exec::default())?;
            let mut t = Table::new(&["q", "m", "h", "n", "parity", "odd_divisors"]);
            for (i, v) in all.iter().enumerate() {
                let n = i as u64 + 1;
                if n < range.n_min || (odd_only && !v.parity.is_odd()) {
                    continue;
                }
                let divs: Vec<String> = v
                    .contributions
                    .iter()
                    .map(|c| format!("{}:{}:{}", c.d, clause_name(c.clause), c.eta))
                    .collect();
                t.push(vec![
                    range.q.into(),
                    m.into(),
                    h_name(h).into(),
                    n.into(),
                    v.parity.to_string().into(),
                    divs.join(";").into(),
                ]);
            }
            Ok(t)
        }
        ParityCmd::Fermat { range, m, h, odd_only } => {
            check_range(&range)?;
            let h_even = h == HParity::Even;
            let rows = Exec::default().map_range(range.n_min, range.n_max + 1, |n| {
                parity::fermat_bed(range.q, m, n, h_even).map(|v| (n, v))
            });
            let mut t = Table::new(&["q", "m", "h", "n", "parity", "t", "sigma"]);
            for r in rows {
                let (n, v) = r?;
                if odd_only && !v.parity.is_odd() {
                    continue;
                }
                t.push(vec![
                    range.q.into(),
                    m.into(),
                    h_name(h).into(),
                    n.into(),
                    v.parity.to_string().into(),
                    v.witness.map(|w| w.0).into(),
                    v.witness.map(|w| u64::from(w.1)).into(),
                ]);
            }
            Ok(t)
        }
        ParityCmd::Cq { q, p_max } => {
            check_q(q)?;
            let mut t = Table::new(&["q", "p", "holds"]);
            for p in 3..p_max {
                if arith::is_odd_prime(p) && (2 * q * (q - 1)) % p != 0 {
                    t.push(vec![q.into(), p.into(), parity::cond_cq(q, p)?.into()]);
                }
            }
            Ok(t)
        }
    }
}

fn h_name(h: HParity) -> &'static str {
    match h {
        HParity::Even => "even",
        HParity::Odd => "odd",
    }
}

fn index_parity(
    range: QRange,
    odd_only: bool,
    f: fn(u64, u64) -> hecke_core::Result<parity::Verdict>,
) -> Out {
    check_range(&range)?;
    let mut t = Table::new(&["q", "n", "parity", "form", "eta"]);
    for n in range.n_min..=range.n_max {
        let v = f(range.q, n)?;
        if odd_only && v.parity == Parity::Even {
            continue;
        }
        t.push(vec![
            range.q.into(),
            n.into(),
            v.parity.to_string().into(),
            v.witness.map(|w| form_name(w.form)).into(),
            v.witness.map(|w| w.eta).into(),
        ]);
    }
    Ok(t)
}

fn verify_cmd(target: &str, level: LevelArg) -> Result<(Table, bool), Failure> {
    let module = match target {
        "all" => None,
        m if verify::MODULES.contains(&m) => Some(m),
        m => {
            return usage(format!("unknown verify target {m:?}; use all or one of {}", verify::MODULES.join(", ")))
        }
    };
    let level = match level {
        LevelArg::Quick => Level::Quick,
        LevelArg::Full => Level::Full,
    };
    let mut t = Table::new(&["module", "check", "status", "detail"]);
    let mut ok = true;
    for o in verify::run(module, level) {
        let (status, detail) = match &o.result {
            Ok(()) => ("pass", Cell::Null),
            Err(e) => {
                ok = false;
                eprintln!("FAIL {}: {}: {e}", o.module, o.name);
                ("fail", e.as_str().into())
            }
        };
        t.push(vec![o.module.into(), o.name.into(), status.into(), detail]);
    }
    Ok((t, ok))
}

fn run(cli: Cli) -> Result<bool, Failure> {
    let (table, ok) = match cli.command {
        Command::Census(c) => (census_cmd(c)?, true),
        Command::Oracle(c) => (oracle_cmd(c)?, true),
        Command::Wreath(c) => (wreath_cmd(c)?, true),
        Command::Gf2(c) => (gf2_cmd(c)?, true),
        Command::Parity(c) => (parity_cmd(c)?, true),
        Command::Verify { target, level } => verify_cmd(&target, level)?,
    };
    table.emit(cli.format).map_err(|e| Failure::Usage(format!("writing output: {e}")))?;
    Ok(ok)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Verification(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
