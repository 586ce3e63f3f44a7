import init, { band_structure, flux_table, bound_pair_profile } from "./pkg/jch_web.js";

const $ = (id) => document.getElementById(id);
const num = (id) => Number($(id).value);
const status = (msg) => { $("status").textContent = msg ?? ""; };

function frame(canvas, xmin, xmax, ymin, ymax) {
  const ctx = canvas.getContext("2d");
  const pad = 40;
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  ctx.strokeStyle = "#888";
  ctx.strokeRect(pad, 10, canvas.width - pad - 10, canvas.height - pad - 10);
  ctx.fillStyle = "#333";
  ctx.font = "12px sans-serif";
  ctx.fillText(ymax.toFixed(2), 2, 18);
  ctx.fillText(ymin.toFixed(2), 2, canvas.height - pad);
  ctx.fillText(xmin.toFixed(2), pad, canvas.height - pad + 16);
  ctx.fillText(xmax.toFixed(2), canvas.width - 50, canvas.height - pad + 16);
  const sx = (x) => pad + ((x - xmin) / (xmax - xmin || 1)) * (canvas.width - pad - 10);
  const sy = (y) => canvas.height - pad - ((y - ymin) / (ymax - ymin || 1)) * (canvas.height - pad - 20);
  return { ctx, sx, sy };
}

function run(fn) {
  try { status(); fn(); } catch (e) { status(String(e)); }
}

function drawBands() {
  const bands = JSON.parse(band_structure(num("n"), num("wa"), num("wb"), num("kappa"), num("lambda")));
  const all = bands.flatMap((b) => b.energies);
  const { ctx, sx, sy } = frame($("bands"), 0, 2 * Math.PI, Math.min(...all), Math.max(...all));
  ctx.fillStyle = "#1f5fbf";
  for (const b of bands) for (const e of b.energies) ctx.fillRect(sx(b.k) - 3, sy(e) - 1, 6, 2);
}

function drawFlux() {
  const rows = JSON.parse(flux_table(num("n"), num("kappa"), num("lambda"), 240));
  const { ctx, sx, sy } = frame($("flux"), 0, 2 * Math.PI, -Math.PI / 2, Math.PI / 2);
  const colors = ["#c33", "#393"];
  colors.forEach((color, leg) => {
    ctx.fillStyle = color;
    for (const r of rows) if (r.flux[leg] !== null) ctx.fillRect(sx(r.k) - 1, sy(r.flux[leg]) - 1 - leg, 2, 2);
  });
}

function drawProfile() {
  const p = JSON.parse(bound_pair_profile(num("n"), num("kappa"), num("lambda"), $("family").value, num("j")));
  $("profile-info").textContent = ` residual ${p.residual.toExponential(2)}, Omega_j ${p.omega_j.toFixed(4)}`;
  const seps = p.photon_photon.length;
  const { ctx, sx, sy } = frame($("profile"), -0.5, seps - 0.5, 0, 1);
  const series = [["photon_photon", "#c33"], ["atom_atom", "#339"], ["photon_atom", "#393"]];
  series.forEach(([key, color], s) => {
    ctx.fillStyle = color;
    p[key].forEach((w, d) => {
      const x0 = sx(d - 0.4 + 0.27 * s);
      ctx.fillRect(x0, sy(w), sx(0.25) - sx(0), sy(0) - sy(w));
    });
  });
}

await init();
$("bands-btn").onclick = () => run(drawBands);
$("flux-btn").onclick = () => run(drawFlux);
$("profile-btn").onclick = () => run(drawProfile);
run(drawBands);
run(drawFlux);
