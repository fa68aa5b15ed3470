// Regenerates the compiled fixtures in fixtures/ from fixtures/src/*.sol.
//
//   npm install solc@0.8.30
//   node scripts/gen-fixtures.js
//
// Each entry writes <name>.yul (the IR of the main contract, with any linked
// libraries appended as extra sub-objects) and <name>.json (the ABIs of every
// contract in the source file, keyed by contract name).
const fs = require('fs');
const path = require('path');
const solc = require('solc');

const root = path.join(__dirname, '..', 'fixtures');
const src = path.join(root, 'src');

const FIXTURES = [
  { name: 'reveal_gate', file: 'reveal_gate.sol', contract: 'Gate' },
  { name: 'hidden_gate', file: 'hidden_gate.sol', contract: 'Gate' },
  { name: 'counter', file: 'counter.sol', contract: 'Counter' },
  { name: 'timelock', file: 'timelock.sol', contract: 'Timelock' },
  { name: 'proxy', file: 'proxy.sol', contract: 'Proxy' },
  { name: 'deployer', file: 'deployer.sol', contract: 'Deployer' },
  { name: 'library', file: 'library.sol', contract: 'UsesLib', libraries: ['MathLib'] },
  { name: 'price_oracle', file: 'price_oracle.sol', contract: 'Consumer' },
  { name: 'crowdsale', file: 'crowdsale.sol', contract: 'Crowdsale' },
  { name: 'token', file: 'token.sol', contract: 'Token' },
  { name: 'two_functions', file: 'two_functions.sol', contract: 'TwoFunctions' },
];

function compile(file) {
  const input = {
    language: 'Solidity',
    sources: { [file]: { content: fs.readFileSync(path.join(src, file), 'utf8') } },
    settings: { outputSelection: { '*': { '*': ['ir', 'abi'] } } },
  };
  const imports = (p) => {
    const full = path.join(src, p);
    return fs.existsSync(full) ? { contents: fs.readFileSync(full, 'utf8') } : { error: 'not found' };
  };
  const out = JSON.parse(solc.compile(JSON.stringify(input), { import: imports }));
  for (const e of out.errors || []) {
    if (e.severity === 'error') throw new Error(e.formattedMessage);
  }
  return out.contracts[file];
}

for (const f of FIXTURES) {
  const contracts = compile(f.file);
  let ir = contracts[f.contract].ir.trimEnd();
  if (f.libraries) {
    if (!ir.endsWith('}')) throw new Error(`${f.name}: unexpected IR tail`);
    const libs = f.libraries.map((l) => contracts[l].ir.trim()).join('\n\n');
    ir = ir.slice(0, -1) + '\n' + libs + '\n}';
  }
  const abis = {};
  for (const [name, c] of Object.entries(contracts)) abis[name] = c.abi;
  fs.writeFileSync(path.join(root, `${f.name}.yul`), ir + '\n');
  fs.writeFileSync(path.join(root, `${f.name}.json`), JSON.stringify(abis, null, 1) + '\n');
  console.log(`wrote ${f.name}`);
}
