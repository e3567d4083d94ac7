import init, { classify, witness, weyr } from "./pkg/slrev_wasm.js";

const $ = (id) => document.getElementById(id);
const out = $("out");

function el(tag, attrs = {}, ...children) {
  const node = document.createElement(tag);
  Object.assign(node, attrs);
  node.append(...children);
  return node;
}

function specFromPreset(value) {
  const blocks = JSON.parse(value).map(([eigenvalue, size]) => ({ eigenvalue, size }));
  return JSON.stringify({ blocks }, null, 1);
}

function matrix(m) {
  const table = el("table", { className: "matrix" });
  for (const row of m.entries) {
    const tr = el("tr");
    for (const x of row) tr.append(el("td", { className: x === "0" ? "zero" : "" }, x));
    table.append(tr);
  }
  return table;
}

function young(label, d) {
  return el("div", {}, el("div", {}, `${label} = (${d.parts.join(",")})`), el("pre", {}, d.young || "(empty)"));
}

function flag(ok, yes, no) {
  return el("span", { className: ok ? "ok" : "bad" }, ok ? yes : no);
}

function showClassify(r) {
  const s = r.strong_reversibility;
  const rev = r.reversibility;
  const verdict = !s.reversible
    ? flag(false, "", `not reversible: J(${rev.failure_witness.eigenvalue}, ${rev.failure_witness.size}) has no partner`)
    : flag(s.strongly_reversible, "strongly reversible", "reversible, not strongly reversible");
  out.append(el("h2", {}, `${r.spec}, n = ${r.n}`), el("p", {}, verdict));
  if (!s.reversible) return;
  out.append(
    el("p", {}, `p = ${s.p}, q = ${s.q}`),
    el("div", { className: "diagrams" }, young("d(p)", r.dp), young("d(q)", r.dq)),
    el("p", {}, `condition (1), an odd ±1 block: ${s.condition1}`),
    el("p", {}, `condition (2), weight ${s.condition2_value} is even: ${s.condition2}`),
    el("p", {}, `determinant of every involutive reverser: ${r.involutive_det_sign}`),
  );
}

function showWitness(r) {
  const rep = r.report;
  out.append(
    el("h2", {}, "A"), matrix(r.a),
    el("h2", {}, "g"), matrix(r.g),
    el("pre", {}, r.transcript.join("\n")),
    el("p", {}, "gAg⁻¹ = A⁻¹: ", flag(rep.reverses, "yes", "no")),
    el("p", {}, "g² = I: ", flag(rep.involution, "yes", "no")),
    el("p", {}, "det g = ", flag(rep.in_special, rep.determinant, rep.determinant)),
  );
}

function showWeyr(r) {
  for (const s of r.structures) {
    out.append(
      el("h2", {}, `eigenvalue ${s.eigenvalue}`),
      el("div", { className: "diagrams" }, young("Jordan", s.jordan), young("Weyr", s.weyr)),
    );
  }
  out.append(
    el("h2", {}, "Weyr matrix"), matrix(r.matrix),
    el("p", {}, `Jordan index → Weyr index: [${r.permutation.join(", ")}]`),
  );
}

function run(op, show) {
  $("error").textContent = "";
  out.replaceChildren();
  try {
    show(JSON.parse(op($("spec").value)));
  } catch (e) {
    $("error").textContent = e.message ?? String(e);
  }
}

await init();
$("spec").value = specFromPreset($("preset").value);
$("preset").addEventListener("change", (e) => { $("spec").value = specFromPreset(e.target.value); });
$("classify").addEventListener("click", () => run(classify, showClassify));
$("witness-inv").addEventListener("click", () => run((s) => witness(s, true), showWitness));
$("witness-sl").addEventListener("click", () => run((s) => witness(s, false), showWitness));
$("weyr").addEventListener("click", () => run(weyr, showWeyr));
