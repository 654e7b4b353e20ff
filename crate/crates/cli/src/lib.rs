//! Command-line driver: dump tables and matrices, run the `G2` diagram check.
//!
//! Exit codes: `0` success, `1` failed verification or computation error,
//! `2` usage error.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use ellfourier_core::fingroup::{
    builtin_character_table, make_cyclic, make_symmetric, make_trivial,
    make_weyl_a1xa1, make_weyl_g2, FiniteGroup,
};
use ellfourier_core::fourier::{fourier_matrix, m_set, m_set_s3};
use ellfourier_core::padic::{dual_ft, res_matrix, type_c_classes, verify_diagram};
use ellfourier_core::pretty::{render, render_matrix};
use ellfourier_core::unipotent::{build_a1a1q, build_a2q, build_g2q, elliptic_basis, ft_elliptic, UnipotentSpace};
use ellfourier_core::{character_table, CharacterTable, CycMatrix, Error};

#[derive(Parser, Debug)]
#[command(name = "ellfourier", version, about = "Exact elliptic Fourier transforms for G2")]
pub struct Cli {
    /// Output format on stdout.
    #[arg(long, value_enum, default_value_t = Format::Pretty, global = true)]
    pub format: Format,
    /// Also write the JSON output to this file.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Pretty,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Character table of a small group.
    Chartab { group: GroupArg },
    /// Nonabelian Fourier matrix on M(gamma).
    Fourier { gamma: GammaArg },
    /// Orthonormal basis of the elliptic unipotent space.
    EllipticBasis { space: SpaceArg },
    /// Fourier transform restricted to the elliptic space.
    FtEl { space: SpaceArg },
    /// Matrix of the elliptic restriction map for G2.
    ResMatrix,
    /// Dual Fourier transform on the elliptic G2 representations v1..v9.
    DualFt,
    /// Check the G2 commutative diagram; exit 1 unless it commutes exactly.
    Verify,
    /// Classify the unipotent classes of Sp(2n) given by partitions of 2n.
    PartitionsC {
        #[arg(value_parser = parse_even)]
        two_n: u64,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum GroupArg {
    Wg2,
    S3,
    Z2,
    Z3,
    A1xa1,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum GammaArg {
    Trivial,
    Z2,
    Z3,
    S3,
    S4,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum SpaceArg {
    G2q,
    A1a1q,
    A2q,
}

fn parse_even(s: &str) -> Result<u64, String> {
    let n: u64 = s.parse().map_err(|e| format!("{e}"))?;
    if n % 2 != 0 {
        Err(format!("{n} is odd"))
    } else if n > 40 {
        Err(format!("{n} is larger than 40"))
    } else {
        Ok(n)
    }
}

/// Rendered output: JSON value plus pretty text, and whether the run counts as success.
struct Output {
    json: Value,
    pretty: String,
    ok: bool,
}

fn matrix_output(m: &CycMatrix) -> Output {
    Output {
        json: serde_json::from_str(&m.to_json()).expect("matrix json"),
        pretty: render_matrix(m),
        ok: true,
    }
}

fn group(arg: GroupArg) -> ellfourier_core::Result<Arc<FiniteGroup>> {
    Ok(match arg {
        GroupArg::Wg2 => make_weyl_g2(),
        GroupArg::S3 => make_symmetric(3)?,
        GroupArg::Z2 => make_cyclic(2)?,
        GroupArg::Z3 => make_cyclic(3)?,
        GroupArg::A1xa1 => make_weyl_a1xa1(),
    })
}

fn space(arg: SpaceArg) -> ellfourier_core::Result<Arc<UnipotentSpace>> {
    match arg {
        SpaceArg::G2q => build_g2q(),
        SpaceArg::A1a1q => build_a1a1q(),
        SpaceArg::A2q => build_a2q(),
    }
}

fn table_output(t: &CharacterTable) -> Output {
    let g = t.group();
    let header: Vec<String> = g.classes().iter().map(|c| c.name.clone()).collect();
    let rows: Vec<Vec<_>> = t.rows().iter().map(|r| r.values().to_vec()).collect();
    let m = CycMatrix::new(t.names().to_vec(), header, rows).expect("table shape");
    let mut pretty = format!("{} (order {})\n", g.name(), g.order());
    for c in g.classes() {
        pretty.push_str(&format!("  class {:<6} rep {:<16} size {}\n", c.name, g.word_string(c.representative), c.size));
    }
    pretty.push_str(&render_matrix(&m));
    Output {
        json: serde_json::from_str(&t.to_json()).expect("table json"),
        pretty,
        ok: true,
    }
}

fn execute(cmd: &Command) -> ellfourier_core::Result<Output> {
    Ok(match cmd {
        Command::Chartab { group: arg } => {
            let g = group(*arg)?;
            // Groups with a shipped table print it in its own row order, after
            // checking it against the computed table.
            let computed = character_table(&g)?;
            let t = match builtin_character_table(&g) {
                Some(t) => t?,
                None => computed,
            };
            table_output(&t)
        }
        Command::Fourier { gamma } => {
            let m = match gamma {
                GammaArg::Trivial => m_set(&make_trivial())?,
                GammaArg::Z2 => m_set(&make_cyclic(2)?)?,
                GammaArg::Z3 => m_set(&make_cyclic(3)?)?,
                GammaArg::S3 => m_set_s3()?,
                GammaArg::S4 => m_set(&make_symmetric(4)?)?,
            };
            matrix_output(&fourier_matrix(&m, None)?)
        }
        Command::EllipticBasis { space: arg } => {
            let s = space(*arg)?;
            let basis = elliptic_basis(&s)?;
            let json = json!({
                "space": s.name(),
                "labels": s.labels(),
                "basis": basis.iter().map(|(name, v)| json!({
                    "name": name,
                    "coordinates": v.coords().iter()
                        .map(|c| serde_json::from_str::<Value>(&c.to_json()).expect("json"))
                        .collect::<Vec<_>>(),
                })).collect::<Vec<_>>(),
            });
            let mut pretty = format!("{}\n", s.name());
            for (name, v) in &basis {
                let terms: Vec<String> = s
                    .labels()
                    .iter()
                    .zip(v.coords())
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(l, c)| format!("({}) {}", render(c), l))
                    .collect();
                pretty.push_str(&format!("  {name} = {}\n", terms.join(" + ")));
            }
            Output { json, pretty, ok: true }
        }
        Command::FtEl { space: arg } => matrix_output(&ft_elliptic(&space(*arg)?)?),
        Command::ResMatrix => matrix_output(&res_matrix()?),
        Command::DualFt => matrix_output(&dual_ft()?),
        Command::Verify => {
            let r = verify_diagram()?;
            let ok = r.commutes && r.residual.is_zero();
            let pretty = format!(
                "commutes: {}\n  FT_el^T R = R FT_dual^T: {}\n  R^T FT_el R = FT_dual: {}\n  R FT_el R^T = FT_dual (R as printed): {}\n  FT_el blocks: {:?}\n  FT_dual blocks: {:?}\nresidual:\n{}",
                r.commutes,
                r.intertwines,
                r.printed_identity,
                r.literal_printed_identity,
                r.ft_el_blocks,
                r.ft_dual_blocks,
                render_matrix(&r.residual)
            );
            Output {
                json: serde_json::from_str(&r.to_json()).expect("report json"),
                pretty,
                ok,
            }
        }
        Command::PartitionsC { two_n } => {
            let classes = type_c_classes(*two_n)?;
            let tf = |b: bool| if b { "T" } else { "F" };
            let mut pretty = String::new();
            let mut items = Vec::new();
            for (p, c) in &classes {
                pretty.push_str(&format!(
                    "{p}: ({},{},{},{})\n",
                    tf(c.is_unipotent_class),
                    tf(c.is_distinguished),
                    tf(c.is_quasidistinguished),
                    tf(c.in_u_el)
                ));
                items.push(json!({
                    "partition": p.parts(),
                    "is_unipotent_class": c.is_unipotent_class,
                    "is_distinguished": c.is_distinguished,
                    "is_quasidistinguished": c.is_quasidistinguished,
                    "in_u_el": c.in_u_el,
                }));
            }
            Output {
                json: Value::Array(items),
                pretty,
                ok: true,
            }
        }
    })
}

/// Run with the given arguments (including the program name); returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let _ = if code == 0 {
                write!(stdout, "{}", e.render())
            } else {
                write!(stderr, "{}", e.render())
            };
            return code;
        }
    };
    let out = match execute(&cli.command) {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return match e {
                Error::OutOfRange(_) | Error::OddTotal(_) => 2,
                _ => 1,
            };
        }
    };
    let json_text = serde_json::to_string(&out.json).expect("json");
    if let Some(path) = &cli.out {
        if let Err(e) = std::fs::write(path, format!("{json_text}\n")) {
            let _ = writeln!(stderr, "error: cannot write {}: {e}", path.display());
            return 1;
        }
    }
    let _ = match cli.format {
        Format::Json => writeln!(stdout, "{json_text}"),
        Format::Pretty => write!(stdout, "{}", out.pretty),
    };
    if out.ok {
        0
    } else {
        let _ = writeln!(stderr, "verification failed");
        1
    }
}
