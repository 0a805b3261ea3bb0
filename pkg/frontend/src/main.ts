/**
 * Entry point: a tiny hash router.
 *
 *   #/survey/<id>         the respondent-facing form
 *   #/dashboard/<id>      the stakeholder dashboard
 *   #/dashboard/<id>/run/<run_id>   dashboard with a frozen run loaded
 *
 * The API origin can be set by the hosting page via `window.RATIONALIZER_API`
 * (defaults to same origin); a shared bearer token via `window.RATIONALIZER_TOKEN`.
 */

import { ApiClient } from "./api.js";
import { renderDashboard } from "./dashboard.js";
import { renderSurveyForm } from "./surveyForm.js";

declare global {
  interface Window {
    RATIONALIZER_API?: string;
    RATIONALIZER_TOKEN?: string;
  }
}

async function route(client: ApiClient, outlet: HTMLElement): Promise<void> {
  const hash = window.location.hash.replace(/^#\/?/, "");
  const parts = hash.split("/").filter(Boolean);
  outlet.replaceChildren();

  if (parts[0] === "survey" && parts[1]) {
    const survey = await client.getSurvey(parts[1]);
    outlet.append(renderSurveyForm(client, survey).element);
    return;
  }
  if (parts[0] === "dashboard" && parts[1]) {
    const dashboard = renderDashboard(client, parts[1]);
    outlet.append(dashboard.element);
    await dashboard.refresh();
    if (parts[2] === "run" && parts[3]) await dashboard.loadRun(parts[3]);
    return;
  }

  const help = document.createElement("p");
  help.innerHTML =
    "Open <code>#/survey/&lt;survey-id&gt;</code> to answer a survey or " +
    "<code>#/dashboard/&lt;survey-id&gt;</code> to review the verdicts.";
  outlet.append(help);
}

export function start(): void {
  const client = new ApiClient(window.RATIONALIZER_API ?? "", window.RATIONALIZER_TOKEN);
  const outlet = document.getElementById("app");
  if (!outlet) throw new Error("missing #app outlet");
  const go = () => {
    route(client, outlet).catch((error) => {
      outlet.replaceChildren();
      const message = document.createElement("p");
      message.className = "error";
      message.textContent = String(error);
      outlet.append(message);
    });
  };
  window.addEventListener("hashchange", go);
  go();
}

start();
