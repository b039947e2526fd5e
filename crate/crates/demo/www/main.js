import init, { trace, classify, drift, defaultWindow } from "./pkg/wavepaths_demo.js";

const SAMPLES = 4000;
const ids = ["c0", "x0", "z0"];
const inputs = Object.fromEntries(ids.map((id) => [id, document.getElementById(id)]));
const canvas = document.getElementById("plot");
const ctx = canvas.getContext("2d");

function value(id) {
  return parseFloat(inputs[id].value);
}

function draw(rows) {
  const xs = [];
  const zs = [];
  for (let i = 0; i < rows.length; i += 5) {
    xs.push(rows[i + 1]);
    zs.push(rows[i + 2]);
  }
  const pad = 40;
  const [xLo, xHi] = [Math.min(...xs), Math.max(...xs)];
  let [zLo, zHi] = [Math.min(...zs), Math.max(...zs)];
  if (zHi - zLo < 1e-12) {
    zLo -= 0.5;
    zHi += 0.5;
  }
  const sx = (x) => pad + ((x - xLo) / (xHi - xLo || 1)) * (canvas.width - 2 * pad);
  const sz = (z) => canvas.height - pad - ((z - zLo) / (zHi - zLo)) * (canvas.height - 2 * pad);

  ctx.clearRect(0, 0, canvas.width, canvas.height);
  ctx.strokeStyle = "#999";
  ctx.strokeRect(pad, pad, canvas.width - 2 * pad, canvas.height - 2 * pad);
  ctx.fillStyle = "#333";
  ctx.font = "12px sans-serif";
  ctx.fillText(xLo.toFixed(3), pad, canvas.height - pad + 16);
  ctx.fillText(xHi.toFixed(3), canvas.width - pad - 40, canvas.height - pad + 16);
  ctx.fillText(zLo.toPrecision(4), 2, canvas.height - pad);
  ctx.fillText(zHi.toPrecision(4), 2, pad + 10);
  ctx.fillText("x", canvas.width / 2, canvas.height - 8);
  ctx.fillText("z", 8, canvas.height / 2);

  ctx.strokeStyle = "steelblue";
  ctx.lineWidth = 1.5;
  ctx.beginPath();
  xs.forEach((x, i) => (i === 0 ? ctx.moveTo(sx(x), sz(zs[i])) : ctx.lineTo(sx(x), sz(zs[i]))));
  ctx.stroke();

  ctx.fillStyle = "crimson";
  ctx.beginPath();
  const start = xs.findIndex((_, i) => rows[5 * i] >= 0);
  if (start >= 0) ctx.arc(sx(xs[start]), sz(zs[start]), 4, 0, 2 * Math.PI);
  ctx.fill();
}

function update() {
  for (const id of ids) {
    inputs[id].nextElementSibling.value = value(id).toFixed(3);
  }
  const [c0, x0, z0] = ids.map(value);
  const error = document.getElementById("error");
  try {
    const [t0, t1] = defaultWindow(c0, x0, z0);
    draw(trace(c0, x0, z0, t0, t1, SAMPLES));
    document.getElementById("summary").textContent = classify(c0, x0, z0);
    const d = drift(c0, x0, z0);
    document.getElementById("drift").textContent = d.length
      ? `period T = ${d[0].toFixed(6)}, drift per period Δx = ${d[1].toFixed(6)}, mean velocity = ${d[2].toFixed(6)}`
      : "moving-frame motion is not periodic for this current";
    error.textContent = "";
  } catch (e) {
    error.textContent = String(e);
  }
}

await init();
for (const id of ids) inputs[id].addEventListener("input", update);
update();
