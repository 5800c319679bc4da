//! Command-line front end. Reports go to standard output; progress and
//! errors go to standard error.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::checks::{run_all, CheckConfig, CheckId, EpicMode};
use crate::fixture::GOLDEN_FILES;
use crate::io::{
    decode_text, emit_model_dsl, emit_persona, emit_stories_table, parse_aliases, parse_epic_nodes, parse_model_dsl,
    parse_model_json, parse_persona, parse_stories_table, ArtifactBundle, Persona, UserStory,
};
use crate::linker::{link_story_lenient, suggest_links, AliasTable};
use crate::model::MotivationalModel;
use crate::report::{exit_code_with, render_json, render_text, ExitPolicy, EXIT_OK, EXIT_USAGE};
use crate::scaffold::{induce_model, scaffold_personas, scaffold_stories};

#[derive(Debug, Parser)]
#[command(name = "mmlint", version, about = "Check motivational models, personas and user stories for consistency")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum EpicModeArg {
    Declared,
    ByName,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ScaffoldKind {
    Personas,
    Stories,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run the consistency checks and print a report.
    Check {
        /// Model file (`.mm`, or `.json` for the interchange format).
        model: PathBuf,
        /// Stories table (`.csv`).
        stories: PathBuf,
        /// Persona files.
        personas: Vec<PathBuf>,
        /// Label equivalences (`a = b` per line).
        #[arg(long)]
        aliases: Option<PathBuf>,
        /// Epic-to-goal mapping (`Epic name -> goal` per line).
        #[arg(long)]
        epics: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Only errors fail the run; warnings are reported but exit 0.
        #[arg(long)]
        lenient: bool,
        /// Checks to skip, e.g. `CP3,CP5`.
        #[arg(long, value_delimiter = ',')]
        disable: Vec<CheckId>,
        #[arg(long, value_enum, default_value = "declared")]
        epic_mode: EpicModeArg,
    },
    /// Suggest goals for stories that link to none.
    Suggest {
        model: PathBuf,
        stories: PathBuf,
        #[arg(long)]
        aliases: Option<PathBuf>,
        /// Suggestions per story.
        #[arg(short, long, default_value_t = 3, value_parser = clap::value_parser!(u32).range(1..))]
        k: u32,
    },
    /// Generate persona or story skeletons from a model.
    Scaffold {
        model: PathBuf,
        #[arg(long, value_enum)]
        kind: ScaffoldKind,
        #[arg(long)]
        out: PathBuf,
    },
    /// Draft a model from stories, epics and personas.
    Induce {
        stories: PathBuf,
        personas: Vec<PathBuf>,
        /// Output `.mm` file.
        #[arg(long)]
        out: PathBuf,
        /// Also write the stories relinked to the draft model.
        #[arg(long)]
        stories_out: Option<PathBuf>,
    },
    /// Write the bundled case-study corpus.
    Init {
        dir: PathBuf,
        #[arg(long)]
        force: bool,
    },
}

struct CliError(String);

impl<E: std::fmt::Display> From<(&Path, E)> for CliError {
    fn from((path, e): (&Path, E)) -> Self {
        CliError(format!("{}: {e}", path.display()))
    }
}

type CliResult<T> = Result<T, CliError>;

/// Runs one command and returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(code) => code,
        Err(CliError(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> CliResult<i32> {
    match command {
        Command::Check { model, stories, personas, aliases, epics, format, lenient, disable, epic_mode } => {
            let bundle = load_bundle(&model, &stories, &personas, aliases.as_deref(), epics.as_deref())?;
            let mut config = CheckConfig {
                epic_mode: match epic_mode {
                    EpicModeArg::Declared => EpicMode::Declared,
                    EpicModeArg::ByName => EpicMode::ByName,
                },
                ..CheckConfig::default()
            };
            for id in disable {
                config = config.disable(id);
            }
            let report = run_all(&bundle, &config);
            let rendered = match format {
                Format::Text => render_text(&report),
                Format::Json => render_json(&report),
            };
            write_out(out, &rendered)?;
            let policy = if lenient { ExitPolicy::Lenient } else { ExitPolicy::Strict };
            Ok(exit_code_with(&report, policy))
        }
        Command::Suggest { model, stories, aliases, k } => {
            let model = load_model(&model)?;
            let stories = load_stories(&stories)?;
            let aliases = load_aliases(aliases.as_deref())?;
            write_out(out, &render_suggestions(&model, &stories, &aliases, k as usize))?;
            Ok(EXIT_OK)
        }
        Command::Scaffold { model, kind, out: dir } => {
            let model = load_model(&model)?;
            let files: Vec<(String, String)> = match kind {
                ScaffoldKind::Personas => scaffold_personas(&model)
                    .iter()
                    .map(|p| (format!("{}.persona.txt", p.id), emit_persona(p)))
                    .collect(),
                ScaffoldKind::Stories => {
                    let stories = scaffold_stories(&model).map_err(|e| CliError(e.to_string()))?;
                    vec![("stories.csv".to_string(), emit_stories_table(&stories))]
                }
            };
            fs::create_dir_all(&dir).map_err(|e| CliError::from((dir.as_path(), e)))?;
            for (name, text) in &files {
                let path = dir.join(name);
                fs::write(&path, text).map_err(|e| CliError::from((path.as_path(), e)))?;
                let _ = writeln!(err, "wrote {}", path.display());
            }
            write_out(out, &format!("wrote {} files to {}\n", files.len(), dir.display()))?;
            Ok(EXIT_OK)
        }
        Command::Induce { stories, personas, out: target, stories_out } => {
            let stories = load_stories(&stories)?;
            let personas = load_personas(&personas)?;
            let epics = crate::io::group_epics(&stories);
            let draft = induce_model(&stories, &epics, &personas).map_err(|e| CliError(e.to_string()))?;
            let mut written = 0;
            fs::write(&target, emit_model_dsl(&draft.model)).map_err(|e| CliError::from((target.as_path(), e)))?;
            written += 1;
            if let Some(path) = stories_out {
                fs::write(&path, emit_stories_table(&draft.stories))
                    .map_err(|e| CliError::from((path.as_path(), e)))?;
                written += 1;
            }
            write_out(out, &format!("wrote {written} files\n"))?;
            Ok(EXIT_OK)
        }
        Command::Init { dir, force } => {
            if !force {
                let existing: Vec<_> = GOLDEN_FILES.iter().map(|(n, _)| dir.join(n)).filter(|p| p.exists()).collect();
                if let Some(first) = existing.first() {
                    return Err(CliError(format!("{} already exists (use --force to overwrite)", first.display())));
                }
            }
            fs::create_dir_all(&dir).map_err(|e| CliError::from((dir.as_path(), e)))?;
            for (name, text) in GOLDEN_FILES {
                let path = dir.join(name);
                fs::write(&path, text).map_err(|e| CliError::from((path.as_path(), e)))?;
            }
            let _ = writeln!(
                err,
                "try: mmlint check {0}/model.mm {0}/stories.csv {0}/*.persona.txt --aliases {0}/golden.aliases",
                dir.display()
            );
            write_out(out, &format!("wrote {} files to {}\n", GOLDEN_FILES.len(), dir.display()))?;
            Ok(EXIT_OK)
        }
    }
}

fn write_out(out: &mut dyn Write, text: &str) -> CliResult<()> {
    out.write_all(text.as_bytes()).map_err(|e| CliError(format!("writing output: {e}")))
}

fn read_text(path: &Path) -> CliResult<String> {
    let bytes = fs::read(path).map_err(|e| CliError::from((path, e)))?;
    decode_text(&bytes).map(str::to_string).map_err(|e| CliError::from((path, e)))
}

pub fn load_model_text(path: &Path, text: &str) -> Result<MotivationalModel, crate::io::ArtifactError> {
    let is_json = path.extension().is_some_and(|e| e.eq_ignore_ascii_case("json"));
    if is_json {
        parse_model_json(text)
    } else {
        parse_model_dsl(text)
    }
}

fn load_model(path: &Path) -> CliResult<MotivationalModel> {
    let text = read_text(path)?;
    load_model_text(path, &text).map_err(|e| CliError::from((path, e)))
}

fn load_stories(path: &Path) -> CliResult<Vec<UserStory>> {
    let text = read_text(path)?;
    let name = path.file_name().map_or_else(|| path.display().to_string(), |n| n.to_string_lossy().into_owned());
    parse_stories_table(&text, &name).map_err(|e| CliError::from((path, e)))
}

fn load_personas(paths: &[PathBuf]) -> CliResult<Vec<Persona>> {
    paths.iter().map(|p| parse_persona(&read_text(p)?).map_err(|e| CliError::from((p.as_path(), e)))).collect()
}

fn load_aliases(path: Option<&Path>) -> CliResult<AliasTable> {
    match path {
        Some(p) => parse_aliases(&read_text(p)?).map_err(|e| CliError::from((p, e))),
        None => Ok(AliasTable::empty()),
    }
}

fn load_bundle(
    model: &Path,
    stories: &Path,
    personas: &[PathBuf],
    aliases: Option<&Path>,
    epics: Option<&Path>,
) -> CliResult<ArtifactBundle> {
    let model = load_model(model)?;
    let story_list = load_stories(stories)?;
    let personas = load_personas(personas)?;
    let aliases = load_aliases(aliases)?;
    let epic_nodes = match epics {
        Some(p) => parse_epic_nodes(&read_text(p)?).map_err(|e| CliError::from((p, e)))?,
        None => Vec::new(),
    };
    ArtifactBundle::assemble(model, personas, story_list, aliases, &epic_nodes)
        .map_err(|e| CliError(format!("bundle: {e}")))
}

/// Top-`k` goal suggestions for every story without a functional link.
pub fn render_suggestions(model: &MotivationalModel, stories: &[UserStory], aliases: &AliasTable, k: usize) -> String {
    let mut out = String::new();
    for story in stories {
        if !link_story_lenient(story, model, aliases).functional.is_empty() {
            continue;
        }
        out.push_str(&format!("{}: {}\n", story.id, story.statement()));
        for (id, score) in suggest_links(story, model, aliases, k) {
            out.push_str(&format!("  {score:.3}  {id}  {}\n", model.label(&id)));
        }
    }
    if out.is_empty() {
        out.push_str("no unlinked stories\n");
    }
    out
}
