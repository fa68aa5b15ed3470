use super::config::{Config, Entry, Frame, Move, OppFrame, ProFrame, Status, TraceLine};
use super::explore::Stats;
use super::Game;
use crate::abi::{
    decode_return, encode_args, encode_call, enumerate_args, AbiFunction, AbiType, AbiValue,
    Decoded, FnKind,
};
use crate::dialect::{CallContext, CallKind, ControlEvent, Halt, RevealKind};
use crate::eval::{Machine, RunResult};
use crate::word::{word_from_padded, word_to_bytes, Address, Word};
use crate::yul::contract_name;

/// Result of applying one move.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Step {
    Continue,
    /// The trace ended without a violation (revert, fault, failed deploy).
    Dead,
    /// Message for the `ERROR!` line.
    Violation(String),
    Interrupted,
}

pub(crate) const ASSERTION: &str = "[ASSERTION VIOLATION]";

fn line(kind: &'static str, text: String) -> Option<TraceLine> {
    Some(TraceLine { kind, text })
}

fn top_pro(cfg: &mut Config) -> &mut ProFrame {
    match cfg.stack.last_mut() {
        Some(Frame::Proponent(p)) => p,
        _ => unreachable!("move needs a Proponent frame on top"),
    }
}

/// Renders return data as a value list, using `types` when they are known.
fn render_data(types: Option<&[AbiType]>, data: &[u8]) -> String {
    if let Some(t) = types {
        return decode_return(t, data).to_string();
    }
    if data.len().is_multiple_of(32) {
        let words: Vec<String> = data
            .chunks(32)
            .map(|c| word_from_padded(c).to_string())
            .collect();
        return format!("[{}]", words.join(", "));
    }
    Decoded::Raw(data.to_vec()).to_string()
}

fn hex(bytes: &[u8]) -> String {
    let mut s = String::from("0x");
    for b in bytes {
        s.push_str(&format!("{b:02x}"));
    }
    s
}

impl Game {
    /// The ABI entry `input` would dispatch to on the contract whose code is
    /// `code`, falling back to any contract with the same selector.
    fn label_for(&self, code: Option<Word>, input: &[u8]) -> Option<&AbiFunction> {
        let contract = code
            .and_then(|id| self.objects.name_of(id))
            .map(contract_name)
            .unwrap_or("");
        let fns = self.labels.functions(contract);
        if input.len() < 4 {
            let want = if input.is_empty() {
                FnKind::Receive
            } else {
                FnKind::Fallback
            };
            return fns
                .iter()
                .find(|f| f.kind == want)
                .or_else(|| fns.iter().find(|f| f.kind == FnKind::Fallback));
        }
        let sel: [u8; 4] = input[..4].try_into().expect("four bytes");
        fns.iter()
            .find(|f| f.selector == Some(sel))
            .or_else(|| self.labels.by_selector(sel))
    }

    fn object_label(&self, id: Option<Word>) -> String {
        match id.and_then(|id| self.objects.name_of(id)) {
            Some(n) => n.to_string(),
            None => "?".to_string(),
        }
    }

    /// `sig:<..>, args:<..>` for a call with this calldata.
    fn call_label(&self, code: Option<Word>, input: &[u8]) -> String {
        match self.label_for(code, input) {
            Some(f) => {
                let args = if f.selector.is_some() {
                    &input[4..]
                } else {
                    &[][..]
                };
                format!(
                    "sig:<{}>, args:<{}>",
                    f.signature,
                    decode_return(&f.inputs, args)
                )
            }
            None if input.len() >= 4 => {
                format!("sig:<{}>, args:<{}>", hex(&input[..4]), hex(&input[4..]))
            }
            None => format!("sig:<fallback()>, args:<{}>", hex(input)),
        }
    }

    /// Moves enabled in `cfg`, in exploration order.
    pub fn moves(&self, cfg: &Config) -> Vec<Move> {
        match cfg.stack.last() {
            None => Vec::new(),
            Some(Frame::Proponent(p)) => match &p.status {
                Status::Runnable => vec![Move::Internal],
                Status::Halted(_) => match cfg.stack.len().checked_sub(2).map(|i| &cfg.stack[i]) {
                    None => vec![Move::Deploy],
                    Some(Frame::Opponent(_)) => vec![Move::PORet],
                    Some(Frame::Proponent(_)) => vec![Move::PPRet],
                },
                Status::Stuck(ControlEvent::Call { target, .. }) => {
                    if self.opponents.contains(target) {
                        vec![Move::POCall]
                    } else {
                        vec![Move::PPCall]
                    }
                }
                Status::Stuck(ControlEvent::Create { .. }) => vec![Move::Create],
                Status::Stuck(_) => unreachable!("reveal and assert are handled while running"),
            },
            Some(Frame::Opponent(o)) => self.opponent_moves(cfg, o),
        }
    }

    fn opponent_moves(&self, cfg: &Config, o: &OppFrame) -> Vec<Move> {
        let p = &self.params;
        let sole = cfg.stack.len() == 1;
        let mut out = Vec::new();
        let wait = sole
            && p.waiting_enabled()
            && cfg
                .total_wait
                .checked_add(p.wait_time)
                .is_some_and(|t| t <= p.max_wait);
        if wait && p.wait_first {
            out.push(Move::OWait);
        }
        if cfg.open_calls() < p.stack_bound {
            let callers: Vec<Address> = if sole {
                self.opponents.clone()
            } else {
                vec![o.address]
            };
            for caller in callers {
                let funds = cfg.world.balance(caller);
                for target in &cfg.proponents {
                    let Some(name) = self.code_name(&cfg.world, *target) else {
                        continue;
                    };
                    for (i, f) in self.abi.functions(contract_name(name)).iter().enumerate() {
                        if f.is_read_only() || cfg.calls_to(*target, f.key()) >= p.call_bound {
                            continue;
                        }
                        let mut values = vec![Word::ZERO];
                        if f.is_payable() && !p.opponent_spending.is_zero() {
                            values.push(p.opponent_spending);
                        }
                        values.retain(|v| *v <= funds);
                        for args in enumerate_args(
                            &f.inputs,
                            &cfg.domains,
                            &cfg.proponents,
                            &self.opponents,
                        ) {
                            for v in &values {
                                out.push(Move::OCall {
                                    caller,
                                    target: *target,
                                    function: i,
                                    args: args.clone(),
                                    value: *v,
                                });
                            }
                        }
                    }
                }
            }
        }
        if !sole {
            match (&o.outputs, p.opponent_return_values) {
                (Some(types), true) => {
                    for vals in
                        enumerate_args(types, &cfg.domains, &cfg.proponents, &self.opponents)
                    {
                        out.push(Move::ORet(encode_args(types, &vals)));
                    }
                }
                (None, true) => {
                    for w in &cfg.domains.words {
                        out.push(Move::ORet(word_to_bytes(*w).to_vec()));
                    }
                }
                (_, false) => out.push(Move::ORet(vec![0; o.ret_size as usize])),
            }
        }
        if wait && !p.wait_first {
            out.push(Move::OWait);
        }
        out
    }

    /// Applies `mv`, which must be one of [`Game::moves`]. On a violation the
    /// move is not recorded.
    pub fn apply(
        &self,
        cfg: &mut Config,
        mv: &Move,
        stats: &mut Stats,
        interrupt: &dyn Fn() -> bool,
    ) -> Step {
        stats.moves += 1;
        let step = match mv {
            Move::Internal => return self.run(cfg, interrupt),
            Move::Deploy => self.deploy(cfg),
            Move::OCall {
                caller,
                target,
                function,
                args,
                value,
            } => self.ocall(cfg, *caller, *target, *function, args, *value, stats),
            Move::POCall => self.pocall(cfg),
            Move::PPCall => self.ppcall(cfg),
            Move::Create => self.create(cfg),
            Move::ORet(data) => self.oret(cfg, data),
            Move::PORet => self.poret(cfg),
            Move::PPRet => self.ppret(cfg),
            Move::OWait => {
                if !cfg.world.advance_time(self.params.wait_time) {
                    return Step::Dead;
                }
                cfg.total_wait += self.params.wait_time;
                cfg.waits += 1;
                stats.max_waits = stats.max_waits.max(cfg.waits);
                let secs = u64::try_from(cfg.total_wait).unwrap_or(u64::MAX);
                stats.max_total_wait = stats.max_total_wait.max(secs);
                Ok(line("o-wait", "o-wait".into()))
            }
        };
        match step {
            Ok(l) => {
                cfg.record(mv.clone(), l);
                Step::Continue
            }
            Err(s) => s,
        }
    }

    /// Runs the top Proponent frame. Reveals, assertions and calls to
    /// addresses without code are dealt with here; anything else suspends.
    fn run(&self, cfg: &mut Config, interrupt: &dyn Fn() -> bool) -> Step {
        let host = self.host();
        loop {
            let result = {
                let Config { stack, world, .. } = &mut *cfg;
                let Some(Frame::Proponent(p)) = stack.last_mut() else {
                    unreachable!()
                };
                p.machine.run(&mut p.ctx, world, &host, interrupt)
            };
            match result {
                RunResult::Stuck(ControlEvent::Reveal(kind, v)) => {
                    match kind {
                        RevealKind::Uint => {
                            cfg.domains.words.insert(v);
                        }
                        RevealKind::Addr => {
                            cfg.domains.addresses.insert(Address::from_word(v));
                        }
                    }
                    top_pro(cfg)
                        .machine
                        .resume(&[])
                        .expect("reveal yields nothing");
                }
                RunResult::Stuck(ControlEvent::AssertFailed) => {
                    return Step::Violation(ASSERTION.into())
                }
                RunResult::Stuck(ControlEvent::Call {
                    kind,
                    sender,
                    target,
                    value,
                    gas,
                    ..
                }) if !self.opponents.contains(&target) && cfg.world.code(target).is_none() => {
                    let from = match kind {
                        CallKind::Call => top_pro(cfg).ctx.address,
                        _ => sender,
                    };
                    let moves_value = matches!(kind, CallKind::Call | CallKind::Impersonate);
                    let ok = if moves_value {
                        match cfg.world.transfer(from, target, value) {
                            Ok(()) => true,
                            Err(e) if cfg.is_proponent(e.from) => {
                                return Step::Violation(e.to_string())
                            }
                            Err(_) => false,
                        }
                    } else {
                        true
                    };
                    let p = top_pro(cfg);
                    p.ctx.returndata.clear();
                    p.ctx.gas += gas;
                    p.machine
                        .resume(&[Word::from(ok as u8)])
                        .expect("call yields one value");
                }
                RunResult::Stuck(e) => {
                    top_pro(cfg).status = Status::Stuck(e);
                    cfg.record(Move::Internal, None);
                    return Step::Continue;
                }
                RunResult::Halted(Halt::Stop) => return self.halted(cfg, Vec::new()),
                RunResult::Halted(Halt::Return(d)) => return self.halted(cfg, d),
                RunResult::Halted(Halt::Revert(_)) => return self.unwind(cfg),
                RunResult::Fault(_) => return self.unwind(cfg),
                RunResult::Interrupted => return Step::Interrupted,
            }
        }
    }

    fn halted(&self, cfg: &mut Config, data: Vec<u8>) -> Step {
        top_pro(cfg).status = Status::Halted(data);
        cfg.record(Move::Internal, None);
        Step::Continue
    }

    /// A revert or fault anywhere ends the trace; nothing is rolled back
    /// because the branch is abandoned.
    fn unwind(&self, cfg: &mut Config) -> Step {
        cfg.record(Move::Internal, None);
        Step::Dead
    }

    fn deploy(&self, cfg: &mut Config) -> Result<Option<TraceLine>, Step> {
        let Some(Frame::Proponent(p)) = cfg.stack.pop() else {
            unreachable!()
        };
        let Status::Halted(data) = &p.status else {
            unreachable!()
        };
        if data.len() < 32 {
            return Err(Step::Dead);
        }
        let code = word_from_padded(&data[..32]);
        if self.program(code).is_none() {
            return Err(Step::Dead);
        }
        let at = self.params.deploy_address;
        cfg.world.set_code(at, code);
        if !cfg.proponents.contains(&at) {
            cfg.proponents.push(at);
        }
        cfg.stack.push(Frame::Opponent(OppFrame {
            address: self.opponents[0],
            origin: self.opponents[0],
            is_static: false,
            outputs: None,
            ret_size: 0,
        }));
        Ok(line(
            "deploy",
            format!(
                "deploy(object:<{}>, address:<{}>)",
                self.object_label(Some(code)),
                at
            ),
        ))
    }

    #[allow(clippy::too_many_arguments)]
    fn ocall(
        &self,
        cfg: &mut Config,
        caller: Address,
        target: Address,
        function: usize,
        args: &[AbiValue],
        value: Word,
        stats: &mut Stats,
    ) -> Result<Option<TraceLine>, Step> {
        let Some(Frame::Opponent(o)) = cfg.stack.last() else {
            unreachable!()
        };
        let sole = cfg.stack.len() == 1;
        let origin = if sole { caller } else { o.origin };
        let is_static = o.is_static;
        let code = cfg.world.code(target).ok_or(Step::Dead)?;
        let name = self.objects.name_of(code).ok_or(Step::Dead)?;
        let f = &self.abi.functions(contract_name(name))[function];
        if cfg.world.transfer(caller, target, value).is_err() {
            return Err(Step::Dead);
        }
        *cfg.calls.entry((target, f.key())).or_insert(0) += 1;
        if sole {
            cfg.transactions += 1;
            if cfg.transactions == 1 && cfg.waits == 0 {
                stats.first_level_calls += 1;
            }
        }
        let mut ctx = CallContext::new(target, code, caller, self.params.deploy_gas);
        ctx.origin = origin;
        ctx.callvalue = value;
        ctx.calldata = encode_call(f, args);
        ctx.is_static = is_static;
        let program = self.program(code).ok_or(Step::Dead)?;
        cfg.stack.push(Frame::Proponent(Box::new(ProFrame {
            ctx,
            machine: Machine::new(program),
            status: Status::Runnable,
            entry: Entry::OCall {
                outputs: f.outputs.clone(),
            },
        })));
        stats.max_open_calls = stats.max_open_calls.max(cfg.open_calls());
        stats.max_calls_per_function = stats.max_calls_per_function.max(cfg.max_calls());
        Ok(line(
            "o-call",
            format!(
                "o-call(caller:<{caller}>, target:<{name}>, sig:<{}>, args:<{}>, value:<{value}>)",
                f.signature,
                crate::abi::ValueList(args)
            ),
        ))
    }

    /// The account a call's value is taken from.
    fn value_source(kind: CallKind, sender: Address, parent: Address) -> Address {
        match kind {
            CallKind::Impersonate => sender,
            _ => parent,
        }
    }

    /// Moves a call's value; `Ok(false)` means the call fails without a
    /// violation (an impersonated non-Proponent sender lacks funds).
    fn pay(
        cfg: &mut Config,
        kind: CallKind,
        from: Address,
        to: Address,
        value: Word,
    ) -> Result<bool, Step> {
        if !matches!(kind, CallKind::Call | CallKind::Impersonate) {
            return Ok(true);
        }
        match cfg.world.transfer(from, to, value) {
            Ok(()) => Ok(true),
            Err(e) if cfg.is_proponent(e.from) => Err(Step::Violation(e.to_string())),
            Err(_) => Ok(false),
        }
    }

    fn fail_call(cfg: &mut Config, gas: Word) {
        let p = top_pro(cfg);
        p.ctx.returndata.clear();
        p.ctx.gas += gas;
        p.machine
            .resume(&[Word::ZERO])
            .expect("call yields one value");
        p.status = Status::Runnable;
    }

    fn pocall(&self, cfg: &mut Config) -> Result<Option<TraceLine>, Step> {
        let p = top_pro(cfg);
        let Status::Stuck(ControlEvent::Call {
            kind,
            sender,
            target,
            value,
            input,
            ret_size,
            gas,
            ..
        }) = p.status.clone()
        else {
            unreachable!()
        };
        if kind == CallKind::DelegateCall {
            return Err(Step::Violation(format!(
                "[DELEGATECALL TO OPPONENT] {target}"
            )));
        }
        let origin = p.ctx.origin;
        let is_static = p.ctx.is_static || kind == CallKind::StaticCall;
        let from = Self::value_source(kind, sender, p.ctx.address);
        if !Self::pay(cfg, kind, from, target, value)? {
            Self::fail_call(cfg, gas);
            return Ok(None);
        }
        if input.len() > 4 {
            for chunk in input[4..].chunks(32) {
                let w = word_from_padded(chunk);
                let a = Address::from_word(w);
                let known = a.to_word() == w
                    && !w.is_zero()
                    && (cfg.world.account(a).is_some()
                        || cfg.is_proponent(a)
                        || self.opponents.contains(&a));
                if known {
                    cfg.domains.addresses.insert(a);
                } else {
                    cfg.domains.words.insert(w);
                }
            }
        }
        let outputs = if input.len() >= 4 {
            let sel: [u8; 4] = input[..4].try_into().expect("four bytes");
            self.labels.by_selector(sel).map(|f| f.outputs.clone())
        } else {
            None
        };
        cfg.stack.push(Frame::Opponent(OppFrame {
            address: target,
            origin,
            is_static,
            outputs,
            ret_size,
        }));
        Ok(line(
            "po-call",
            format!("po-call(caller:<{from}>, target:<{target}>)"),
        ))
    }

    fn ppcall(&self, cfg: &mut Config) -> Result<Option<TraceLine>, Step> {
        let p = top_pro(cfg);
        let Status::Stuck(ControlEvent::Call {
            kind,
            sender,
            target,
            value,
            input,
            gas,
            ..
        }) = p.status.clone()
        else {
            unreachable!()
        };
        let parent = p.ctx.clone_header();
        let from = Self::value_source(kind, sender, parent.address);
        if !Self::pay(cfg, kind, from, target, value)? {
            Self::fail_call(cfg, gas);
            return Ok(None);
        }
        let code = cfg.world.code(target).expect("ppcall targets code");
        let program = self.program(code).ok_or(Step::Dead)?;
        let mut ctx = match kind {
            CallKind::DelegateCall => {
                let mut c = CallContext::new(parent.address, code, parent.caller, gas);
                c.code_address = target;
                c.callvalue = parent.callvalue;
                c
            }
            _ => {
                let mut c = CallContext::new(target, code, sender, gas);
                if kind != CallKind::StaticCall {
                    c.callvalue = value;
                }
                c
            }
        };
        ctx.origin = parent.origin;
        ctx.is_static = parent.is_static || kind == CallKind::StaticCall;
        let text = format!(
            "pp-call(target:<{}>, {})",
            self.object_label(Some(code)),
            self.call_label(Some(code), &input)
        );
        let outputs = self
            .label_for(Some(code), &input)
            .map(|f| f.outputs.clone());
        ctx.calldata = input;
        cfg.stack.push(Frame::Proponent(Box::new(ProFrame {
            ctx,
            machine: Machine::new(program),
            status: Status::Runnable,
            entry: Entry::PPCall { outputs },
        })));
        Ok(line("pp-call", text))
    }

    fn create(&self, cfg: &mut Config) -> Result<Option<TraceLine>, Step> {
        let p = top_pro(cfg);
        let Status::Stuck(ControlEvent::Create {
            value,
            object,
            args,
            gas,
            ..
        }) = p.status.clone()
        else {
            unreachable!()
        };
        let parent = p.ctx.clone_header();
        let address = loop {
            cfg.creates += 1;
            let a = super::params::create_address(cfg.creates);
            if cfg.world.account(a).is_none() && !cfg.is_proponent(a) {
                break a;
            }
        };
        Self::pay(cfg, CallKind::Call, parent.address, address, value)?;
        let program = self.program(object).ok_or(Step::Dead)?;
        let mut ctx = CallContext::new(address, object, parent.address, gas);
        ctx.origin = parent.origin;
        ctx.callvalue = value;
        ctx.code.extend_from_slice(&args);
        cfg.stack.push(Frame::Proponent(Box::new(ProFrame {
            ctx,
            machine: Machine::new(program),
            status: Status::Runnable,
            entry: Entry::Create { address },
        })));
        Ok(line(
            "create",
            format!(
                "create(object:<{}>, address:<{address}>)",
                self.object_label(Some(object))
            ),
        ))
    }

    /// Hands return data to a Proponent frame suspended on a call.
    fn deliver(p: &mut ProFrame, data: Vec<u8>, refund: Word) {
        let Status::Stuck(ControlEvent::Call {
            ret_offset,
            ret_size,
            ..
        }) = p.status
        else {
            unreachable!()
        };
        let n = (ret_size as usize).min(data.len());
        if n > 0 {
            p.ctx.memory.write(ret_offset, &data[..n]);
        }
        p.ctx.returndata = data;
        p.ctx.gas += refund;
        p.machine
            .resume(&[Word::from(1u8)])
            .expect("call yields one value");
        p.status = Status::Runnable;
    }

    fn oret(&self, cfg: &mut Config, data: &[u8]) -> Result<Option<TraceLine>, Step> {
        let Some(Frame::Opponent(o)) = cfg.stack.pop() else {
            unreachable!()
        };
        let p = top_pro(cfg);
        let Status::Stuck(ControlEvent::Call { gas, .. }) = p.status else {
            unreachable!()
        };
        Self::deliver(p, data.to_vec(), gas);
        Ok(line(
            "o-ret",
            format!("o-ret({})", render_data(o.outputs.as_deref(), data)),
        ))
    }

    fn poret(&self, cfg: &mut Config) -> Result<Option<TraceLine>, Step> {
        let Some(Frame::Proponent(p)) = cfg.stack.pop() else {
            unreachable!()
        };
        let (Status::Halted(data), Entry::OCall { outputs }) = (&p.status, &p.entry) else {
            unreachable!()
        };
        let decoded = decode_return(outputs, data);
        match &decoded {
            Decoded::Values(vs) => learn(cfg, vs),
            Decoded::Raw(b) => {
                for c in b.chunks(32) {
                    cfg.domains.words.insert(word_from_padded(c));
                }
            }
        }
        Ok(line("po-ret", format!("po-ret({decoded})")))
    }

    fn ppret(&self, cfg: &mut Config) -> Result<Option<TraceLine>, Step> {
        let Some(Frame::Proponent(child)) = cfg.stack.pop() else {
            unreachable!()
        };
        let child = *child;
        let Status::Halted(data) = child.status else {
            unreachable!()
        };
        let refund = child.ctx.gas;
        match child.entry {
            Entry::Create { address } => {
                let code = (data.len() >= 32)
                    .then(|| word_from_padded(&data[..32]))
                    .filter(|id| self.program(*id).is_some());
                let result = match code {
                    Some(id) => {
                        cfg.world.set_code(address, id);
                        if !cfg.proponents.contains(&address) {
                            cfg.proponents.push(address);
                        }
                        address.to_word()
                    }
                    None => Word::ZERO,
                };
                let p = top_pro(cfg);
                p.ctx.returndata.clear();
                p.ctx.gas += refund;
                p.machine
                    .resume(&[result])
                    .expect("create yields one value");
                p.status = Status::Runnable;
                Ok(line(
                    "pp-ret",
                    format!("pp-ret([{}])", Address::from_word(result)),
                ))
            }
            Entry::PPCall { outputs } => {
                let text = format!("pp-ret({})", render_data(outputs.as_deref(), &data));
                Self::deliver(top_pro(cfg), data, refund);
                Ok(line("pp-ret", text))
            }
            _ => unreachable!("PPRet needs a Proponent parent"),
        }
    }
}

/// Values the Proponent hands the Opponent become part of its knowledge.
fn learn(cfg: &mut Config, values: &[AbiValue]) {
    for v in values {
        match v {
            AbiValue::Uint(w) | AbiValue::FixedBytes(w) => {
                cfg.domains.words.insert(*w);
            }
            AbiValue::Address(a) => {
                cfg.domains.addresses.insert(*a);
            }
            AbiValue::Array(items) => learn(cfg, items),
            AbiValue::Bool(_) | AbiValue::Bytes(_) | AbiValue::String(_) => {}
        }
    }
}

/// The parts of a context a child frame inherits, without memory.
struct Header {
    address: Address,
    caller: Address,
    origin: Address,
    callvalue: Word,
    is_static: bool,
}

trait CloneHeader {
    fn clone_header(&self) -> Header;
}

impl CloneHeader for CallContext {
    fn clone_header(&self) -> Header {
        Header {
            address: self.address,
            caller: self.caller,
            origin: self.origin,
            callvalue: self.callvalue,
            is_static: self.is_static,
        }
    }
}
