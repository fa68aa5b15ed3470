//! The bounded game between the Proponent (the contracts under test) and the
//! Opponent (everything else).

mod config;
mod explore;
mod params;
mod step;
mod trace;

use std::collections::HashMap;
use std::sync::Arc;

use thiserror::Error;

pub use config::{Config, Entry, Frame, Move, OppFrame, ProFrame, Status, TraceLine};
pub use explore::{ExploreOptions, Report, Stats, Verdict, Violation};
pub use params::{
    create_address, deployer_address, library_address, opponent_address, Params, DAY,
};
pub use step::Step;
pub use trace::{render_trace, ReplayError};

use crate::abi::{AbiError, ExploreAbi};
use crate::dialect::{CallContext, Halt, Host};
use crate::eval::{compile, CompileError, Machine, Program, RunResult};
use crate::preprocess::{
    inject_hooks, link_libraries, strip_checked_arithmetic, LinkPlan, PreprocessError,
};
use crate::state::{KeccakOracle, World};
use crate::word::{word_from_padded, Address, Word};
use crate::yul::{
    contract_name, index_objects, parse_object, IndexError, ObjectTable, SyntaxError,
};

#[derive(Debug, Error)]
pub enum SetupError {
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
    #[error(transparent)]
    Index(#[from] IndexError),
    #[error(transparent)]
    Preprocess(#[from] PreprocessError),
    #[error("in object `{object}`: {error}")]
    Compile { object: String, error: CompileError },
    #[error("ABI: {0}")]
    Abi(#[from] AbiError),
    #[error("library `{0}` could not be deployed")]
    Library(String),
    #[error("{0}")]
    Params(String),
}

pub type PrintSink = Arc<dyn Fn(&str) + Send + Sync>;

/// Everything about a run that does not change between configurations.
pub struct Game {
    pub params: Params,
    pub objects: ObjectTable,
    /// Functions the Opponent may call (after `--only` filtering).
    pub abi: ExploreAbi,
    /// The unfiltered ABI, used to label calls in traces.
    pub labels: ExploreAbi,
    pub root_name: String,
    pub root_id: Word,
    pub link_plan: LinkPlan,
    pub opponents: Vec<Address>,
    pub warnings: Vec<String>,
    programs: HashMap<Word, Arc<Program>>,
    oracle: KeccakOracle,
    print: PrintSink,
}

impl Game {
    /// Parses, preprocesses and compiles `source`, and reads the ABI.
    pub fn new(
        source: &str,
        abi_json: &str,
        params: Params,
        oracle: KeccakOracle,
    ) -> Result<Game, SetupError> {
        if params.opponent_addresses == 0 {
            return Err(SetupError::Params(
                "at least one opponent address is needed".into(),
            ));
        }
        let mut root = parse_object(source)?;
        inject_hooks(&mut root)?;
        if params.legacy {
            strip_checked_arithmetic(&mut root);
        }
        let link_plan = link_libraries(&root)?;
        let objects = index_objects(&mut root, &oracle)?;
        let mut programs = HashMap::new();
        let mut failure = None;
        root.walk(&mut |o| {
            if failure.is_some() {
                return;
            }
            match compile(&o.code) {
                Ok(p) => {
                    programs.insert(o.id, Arc::new(p));
                }
                Err(error) => {
                    failure = Some(SetupError::Compile {
                        object: o.name.clone(),
                        error,
                    })
                }
            }
        });
        if let Some(e) = failure {
            return Err(e);
        }
        let labels = ExploreAbi::parse(abi_json, contract_name(&root.name))?;
        let mut abi = labels.clone();
        let mut warnings = abi.warnings.clone();
        if !params.only.is_empty() {
            for miss in abi.retain_only(&params.only) {
                warnings.push(format!("--only {miss} matches no function"));
            }
        }
        let opponents = (0..params.opponent_addresses)
            .map(opponent_address)
            .collect();
        Ok(Game {
            params,
            objects,
            abi,
            labels,
            root_name: root.name.clone(),
            root_id: root.id,
            link_plan,
            opponents,
            warnings,
            programs,
            oracle,
            print: Arc::new(|_| {}),
        })
    }

    /// Where `PRINT` and friends write to. Discarded by default.
    pub fn set_print(&mut self, sink: PrintSink) {
        self.print = sink;
    }

    pub fn oracle(&self) -> &KeccakOracle {
        &self.oracle
    }

    pub(crate) fn program(&self, id: Word) -> Option<Arc<Program>> {
        self.programs.get(&id).cloned()
    }

    pub(crate) fn host(&self) -> Host<'_> {
        Host {
            objects: &self.objects,
            opponents: &self.opponents,
            print: &*self.print,
        }
    }

    /// Object name for the code installed at `a`, if any.
    pub fn code_name(&self, world: &World, a: Address) -> Option<&str> {
        world.code(a).and_then(|id| self.objects.name_of(id))
    }

    /// Deploys linked libraries, funds the players and suspends the
    /// top-level constructor at its first instruction.
    pub fn initial_config(&self) -> Result<Config, SetupError> {
        let p = &self.params;
        let mut world = World::new(self.oracle.clone());
        let deployer = deployer_address();
        let mut proponents = Vec::new();
        for (n, (link_id, object)) in self.link_plan.entries.iter().enumerate() {
            let address = library_address(n as u64 + 1);
            self.deploy_library(&mut world, address, object)?;
            world.link_table.insert(link_id.clone(), address);
            proponents.push(address);
        }
        for op in &self.opponents {
            world.ext_fund(*op, p.opponent_balance);
        }
        world.ext_fund(deployer, p.deploy_value);
        world
            .transfer(deployer, p.deploy_address, p.deploy_value)
            .expect("deployer was just funded");
        let mut ctx = CallContext::new(p.deploy_address, self.root_id, deployer, p.deploy_gas);
        ctx.callvalue = p.deploy_value;
        let program = self.program(self.root_id).expect("root object is compiled");
        let frame = ProFrame {
            ctx,
            machine: Machine::new(program),
            status: Status::Runnable,
            entry: Entry::Deploy,
        };
        Ok(Config::new(world, frame, proponents, p))
    }

    fn deploy_library(
        &self,
        world: &mut World,
        address: Address,
        object: &str,
    ) -> Result<(), SetupError> {
        let fail = || SetupError::Library(object.to_string());
        let id = self.objects.id_of(object).ok_or_else(fail)?;
        let mut machine = Machine::new(self.program(id).ok_or_else(fail)?);
        let mut ctx = CallContext::new(address, id, deployer_address(), self.params.deploy_gas);
        match machine.run(&mut ctx, world, &self.host(), &|| false) {
            RunResult::Halted(Halt::Return(data)) if data.len() >= 32 => {
                let code = word_from_padded(&data[..32]);
                if !self.programs.contains_key(&code) {
                    return Err(fail());
                }
                world.set_code(address, code);
                Ok(())
            }
            _ => Err(fail()),
        }
    }
}
