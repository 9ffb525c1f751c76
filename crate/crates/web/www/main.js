import init, { expand, product_exponents, mult_hecke } from "./pkg/qhecke_web.js";

const $ = (id) => document.getElementById(id);

function log10abs(s) {
  const [num, den = "1"] = s.replace("-", "").split("/");
  const lg = (d) => Math.log10(Number(d.slice(0, 15))) + Math.max(0, d.length - 15);
  return num === "0" ? null : lg(num) - lg(den);
}

function plot(entries) {
  const c = $("plot");
  const w = (c.width = c.clientWidth);
  const h = (c.height = c.clientHeight);
  const g = c.getContext("2d");
  g.clearRect(0, 0, w, h);
  const ys = entries.map(([, v]) => log10abs(v));
  const top = Math.max(1, ...ys.filter((y) => y !== null));
  const bw = w / Math.max(entries.length, 1);
  entries.forEach(([, v], i) => {
    const y = ys[i];
    if (y === null) return;
    const bh = (Math.max(y, 0) / top) * (h - 16) + 2;
    g.fillStyle = v.startsWith("-") ? "#c55" : "#36a";
    g.fillRect(i * bw + 1, h - bh, Math.max(bw - 2, 1), bh);
  });
  g.fillStyle = "#555";
  g.fillText(`log10|c(n)|, max ${top.toFixed(1)} (red: negative)`, 4, 12);
}

function show(entries, caption) {
  $("rows").replaceChildren(
    ...entries.map(([n, v]) => {
      const tr = document.createElement("tr");
      for (const x of [n, v]) tr.appendChild(document.createElement("td")).textContent = x;
      return tr;
    }),
  );
  plot(entries);
  $("status").className = "";
  $("status").textContent = caption;
}

function series(json) {
  const f = JSON.parse(json);
  return [f.coeffs.map((c, i) => [f.valuation + i, c]), `Fourier coefficients, O(q^${f.prec})`];
}

function product(json, meta) {
  const p = JSON.parse(json);
  const head = meta ? `weight ${meta.weight}, level ${meta.level}, ` : "";
  return [p.exponents.map((c, i) => [i + 1, c]), `q^${p.order} ∏ (1 - q^n)^c(n); ${head}exponents for n < ${p.prec}`];
}

function run(action) {
  const form = $("form").value;
  const prec = Number($("prec").value);
  const n = Number($("n").value);
  try {
    const t0 = performance.now();
    let out;
    if (action === "expand") out = series(expand(form, prec));
    if (action === "product") out = product(product_exponents(form, prec));
    if (action === "hecke") {
      const r = JSON.parse(mult_hecke(form, n, prec));
      out = product(JSON.stringify(r.form), r.meta);
      out[1] = `𝒯(${n}) of ${form}: ` + out[1];
    }
    show(out[0], `${out[1]} (${(performance.now() - t0).toFixed(0)} ms)`);
  } catch (e) {
    $("status").className = "error";
    $("status").textContent = String(e.message ?? e);
  }
}

await init();
for (const id of ["expand", "product", "hecke"]) $(id).addEventListener("click", () => run(id));
run("product");
