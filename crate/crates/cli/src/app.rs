use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use minfusion::{
    fusion_tensor, search_cyclic_covers_with, verify_abelian_cover, verify_cover_with,
    AbelianGroupSpec, CoverMap, GroupContext, ModelParams, SearchOptions, VerifyOptions,
    DEFAULT_SEARCH_BUDGET,
};

use crate::document::{
    certificate_document, fusion_document, kac_document, search_document, Document, GroupInfo,
};
use crate::group_file::parse_group_file;

/// Largest `p + q` verified with the 2-group construction without
/// `--allow-large`.
pub const TWO_GROUP_LIMIT: i64 = 18;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "minfusion",
    version,
    about = "Fusion rules of Virasoro minimal models and their covers by finite abelian groups"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Args)]
pub struct ModelArgs {
    /// First model parameter, at least 2
    #[arg(long = "p")]
    pub p: i64,
    /// Second model parameter, coprime to p
    #[arg(long = "q")]
    pub q: i64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the Kac table of conformal weights.
    Kac(ModelArgs),
    /// Print the fusion rule table.
    Fusion(ModelArgs),
    /// Verify or search for covers of the fusion rules by abelian groups.
    #[command(subcommand)]
    Cover(CoverCommand),
}

#[derive(Debug, Subcommand)]
pub enum CoverCommand {
    /// Verify a cover: the 2-group construction, or a labeling from --group.
    Verify {
        #[command(flatten)]
        model: ModelArgs,
        /// Group file with a labeling to verify instead of the 2-group map.
        #[arg(long)]
        group: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        threads: usize,
        /// Allow the 2-group construction beyond p + q = 18.
        #[arg(long)]
        allow_large: bool,
    },
    /// Search cyclic groups Z_k, k <= max-order, for covers.
    Search {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, default_value_t = DEFAULT_SEARCH_BUDGET)]
        max_order: u64,
        #[arg(long, default_value_t = 1)]
        threads: usize,
        /// Allow max-order above the default budget.
        #[arg(long)]
        allow_large: bool,
        /// Only require each sector to appear once when pruning.
        #[arg(long)]
        no_profile_prune: bool,
    },
}

/// What a command printed and its exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn usage(message: impl std::fmt::Display) -> Self {
        Self {
            code: EXIT_USAGE,
            stdout: String::new(),
            stderr: format!("error: {message}\n"),
        }
    }

    fn document(doc: &Document, format: Format, code: i32) -> Self {
        Self {
            code,
            stdout: match format {
                Format::Text => doc.to_text(),
                Format::Json => doc.to_json(),
            },
            stderr: String::new(),
        }
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    match execute(cli.command) {
        Ok(outcome) => outcome,
        Err(message) => Outcome::usage(message),
    }
}

fn params(args: &ModelArgs) -> Result<ModelParams, String> {
    ModelParams::new(args.p, args.q).map_err(|e| e.to_string())
}

fn execute(command: Command) -> Result<Outcome, String> {
    match command {
        Command::Kac(args) => {
            let doc = Document::Kac(kac_document(&params(&args)?));
            Ok(Outcome::document(&doc, args.format, EXIT_OK))
        }
        Command::Fusion(args) => {
            let doc = Document::Fusion(fusion_document(&fusion_tensor(&params(&args)?)));
            Ok(Outcome::document(&doc, args.format, EXIT_OK))
        }
        Command::Cover(CoverCommand::Verify {
            model,
            group,
            threads,
            allow_large,
        }) => {
            let params = params(&model)?;
            let tensor = fusion_tensor(&params);
            let (construction, info, cert) = match group {
                Some(path) => {
                    let text = std::fs::read_to_string(&path)
                        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
                    let lg = parse_group_file(&text, params)
                        .map_err(|e| format!("{}: {e}", path.display()))?;
                    let cert = verify_abelian_cover(&lg, &tensor).map_err(|e| e.to_string())?;
                    ("group_file", group_info(lg.spec()), cert)
                }
                None => {
                    if params.p() + params.q() > TWO_GROUP_LIMIT && !allow_large {
                        return Err(format!(
                            "p + q = {} exceeds {TWO_GROUP_LIMIT}; the pair scan grows as 4^(p+q-5), pass --allow-large to run it",
                            params.p() + params.q()
                        ));
                    }
                    let ctx = GroupContext::new(params).map_err(|e| e.to_string())?;
                    let cm = CoverMap::canonical(&ctx).map_err(|e| e.to_string())?;
                    let spec = AbelianGroupSpec::new(vec![2; ctx.width() as usize - 1]);
                    let cert = verify_cover_with(&cm, &tensor, &VerifyOptions { threads })
                        .map_err(|e| e.to_string())?;
                    let info = match spec {
                        Ok(spec) => group_info(&spec),
                        // beyond the verifier's order limit for general groups
                        Err(_) => GroupInfo {
                            name: format!("Z2^{}", ctx.width() - 1),
                            factors: vec![2; ctx.width() as usize - 1],
                            order: cert.stats.group_order,
                        },
                    };
                    ("two_group", info, cert)
                }
            };
            let code = if cert.passed() { EXIT_OK } else { EXIT_FAIL };
            let doc = Document::Certificate(Box::new(certificate_document(
                &tensor,
                construction,
                info,
                &cert,
            )));
            Ok(Outcome::document(&doc, model.format, code))
        }
        Command::Cover(CoverCommand::Search {
            model,
            max_order,
            threads,
            allow_large,
            no_profile_prune,
        }) => {
            let params = params(&model)?;
            let tensor = fusion_tensor(&params);
            let opts = SearchOptions {
                budget: if allow_large {
                    u64::MAX
                } else {
                    DEFAULT_SEARCH_BUDGET
                },
                profile_prune: !no_profile_prune,
                threads,
            };
            let covers = search_cyclic_covers_with(&tensor, max_order, &opts).map_err(|e| {
                if allow_large {
                    e.to_string()
                } else {
                    format!("{e}; pass --allow-large to search further")
                }
            })?;
            let doc = Document::Search(search_document(&tensor, max_order, &covers));
            Ok(Outcome::document(&doc, model.format, EXIT_OK))
        }
    }
}

fn group_info(spec: &AbelianGroupSpec) -> GroupInfo {
    GroupInfo {
        name: spec.to_string(),
        factors: spec.factors().to_vec(),
        order: spec.order(),
    }
}
