mod commands;
mod input;
mod render;
mod selftest;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use leavitt_core::linalg::DEFAULT_MAX_GROUP_ORDER;
use leavitt_core::FieldSpec;

/// Exit status: 0 verdicts produced, 1 input error, 2 inapplicable or
/// non-membership, 3 internal consistency failure.
pub const EXIT_OK: u8 = 0;
pub const EXIT_INPUT: u8 = 1;
pub const EXIT_INAPPLICABLE: u8 = 2;
pub const EXIT_INCONSISTENT: u8 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "leavitt",
    version,
    about = "Lie simplicity of Leavitt path algebras, decided exactly"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    pub json: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Graph conditions, B-vectors and Lie verdicts per characteristic.
    Analyze {
        /// Graph file, `-` for standard input, or a family such as `rose(3)`.
        input: String,
        /// Characteristics to test (0 or primes).
        #[arg(long = "char", value_delimiter = ',', default_value = "0,2,3,5,7")]
        chars: Vec<FieldSpec>,
        #[command(flatten)]
        common: Common,
    },
    /// K₀ group, unit class, its order and divisibility.
    K0 {
        input: String,
        /// Extra primes for the divisibility table (0 is ignored).
        #[arg(long = "char", value_delimiter = ',')]
        chars: Vec<FieldSpec>,
        #[command(flatten)]
        common: Common,
    },
    /// Writes Σ k_i v_i as a sum of commutators, or certifies that it is not one.
    Witness {
        input: String,
        /// Coefficients k_i, one per vertex, as integers or fractions.
        #[arg(
            long,
            value_delimiter = ',',
            allow_hyphen_values = true,
            required = true
        )]
        coeffs: Vec<String>,
        /// Characteristic of the coefficient field.
        #[arg(long = "char", default_value = "0")]
        field: FieldSpec,
        #[command(flatten)]
        common: Common,
    },
    /// Prints a named graph family in the text format.
    Family {
        /// rose, line, matrix_rose, prime_set, two_vertex or example4.
        name: String,
        params: Vec<u64>,
    },
    /// Compares two graphs through their pointed K₀ groups.
    KpCheck {
        first: String,
        second: String,
        #[arg(long = "char", value_delimiter = ',', default_value = "0,2,3,5,7")]
        chars: Vec<FieldSpec>,
        /// Largest torsion order searched when deciding pointed isomorphism.
        #[arg(long, default_value_t = DEFAULT_MAX_GROUP_ORDER)]
        max_group_order: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Runs the built-in regression suite of worked examples.
    Selftest {
        #[command(flatten)]
        common: Common,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INPUT } else { EXIT_OK });
        }
    };
    let echo = std::env::args().skip(1).collect::<Vec<_>>().join(" ");
    let result = match cli.command {
        Command::Analyze {
            input,
            chars,
            common,
        } => commands::analyze(&echo, &input, &chars, &common),
        Command::K0 {
            input,
            chars,
            common,
        } => commands::k0(&echo, &input, &chars, &common),
        Command::Witness {
            input,
            coeffs,
            field,
            common,
        } => commands::witness(&echo, &input, &coeffs, field, &common),
        Command::Family { name, params } => commands::family(&name, &params),
        Command::KpCheck {
            first,
            second,
            chars,
            max_group_order,
            common,
        } => commands::kp_check(&echo, &first, &second, &chars, max_group_order, &common),
        Command::Selftest { common } => selftest::run(&common),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}
