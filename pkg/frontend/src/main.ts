/** Browser entry point: wires the view models to a running service (or the
 * fixture mock when served without a backend). */

import { ApiClient } from "./api.js";
import { renderDashboard, renderInspector } from "./render.js";
import { candidateInspector, roundDashboard } from "./viewmodel.js";

async function boot(): Promise<void> {
  const api = new ApiClient("");
  const root = document.getElementById("app");
  if (!root) return;
  try {
    const summary = await api.createRound();
    const dashboard = roundDashboard(summary);
    let html = renderDashboard(dashboard);
    const firstMission = dashboard.missions[0];
    if (firstMission) {
      const ranked = await api.getCandidates(summary.roundId, firstMission.missionId, {
        limit: 10,
      });
      html += renderInspector(candidateInspector(ranked));
    }
    root.innerHTML = html;
  } catch (err) {
    root.textContent = `Failed to reach the service: ${String(err)}`;
  }
}

void boot();
