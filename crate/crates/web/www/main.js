import init, { drinfeld, factor, irreducible } from "./pkg/qaffine_web.js";

const $ = (id) => document.getElementById(id);

function show(id, text) {
  try {
    $(id).textContent = JSON.stringify(JSON.parse(text), null, 2);
  } catch {
    $(id).textContent = text;
  }
}

await init();

$("drin-go").onclick = () => show("drin-out", drinfeld($("drin-in").value));
$("fac-go").onclick = () => show("fac-out", factor($("fac-in").value, parseInt($("fac-l").value, 10)));
$("irr-go").onclick = () => show("irr-out", irreducible($("irr-in").value));
