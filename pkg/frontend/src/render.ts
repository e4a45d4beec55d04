/** Minimal HTML string rendering for the three console views. */

import type { CandidateInspector, PlanDiff, RoundDashboard } from "./viewmodel.js";

function esc(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

export function renderDashboard(vm: RoundDashboard): string {
  if (vm.empty) {
    return `<p class="empty">${esc(vm.emptyMessage ?? "")}</p>`;
  }
  const rows = vm.missions
    .map((m) => {
      const badge = m.violationBadge
        ? `<span class="badge violation">${esc(m.violationBadge)}</span>`
        : "";
      return (
        `<tr><td>${esc(m.missionId)}</td><td>${esc(m.companyId)}</td>` +
        `<td><span class="badge cluster">${esc(m.clusterBadge)}</span></td>` +
        `<td>${m.assignedCount}/${m.capacity}</td>` +
        `<td>${m.minProposed}..${m.maxProposed} ${badge}</td></tr>`
      );
    })
    .join("");
  const unassigned = vm.unassignedStudents.map(esc).join(", ") || "none";
  const disabled = vm.controlsDisabled ? " disabled" : "";
  return (
    `<section class="dashboard" data-round="${esc(vm.roundId)}">` +
    `<h2>${esc(vm.roundId)} — ${esc(vm.status)}</h2>` +
    `<table><tbody>${rows}</tbody></table>` +
    `<p class="unassigned">Unassigned: ${unassigned}</p>` +
    `<button class="assign"${disabled}>Recompute</button>` +
    `<button class="publish"${disabled}>Publish</button>` +
    `</section>`
  );
}

export function renderInspector(vm: CandidateInspector): string {
  if (vm.empty) {
    return `<p class="empty">${esc(vm.emptyMessage ?? "")}</p>`;
  }
  const cards = vm.entries
    .map((e) => {
      const bars = [e.bars.skill, e.bars.prototype, e.bars.interest]
        .map(
          (b) =>
            `<div class="bar ${b.label}" data-value="${b.value}">` +
            `${esc(b.label)}: ${b.value}</div>`,
        )
        .join("");
      const chipsHtml = e.noArguments
        ? `<p class="no-arguments">${esc(e.noArgumentsMessage ?? "")}</p>`
        : e.argumentChips
            .map(
              (c) =>
                `<span class="chip" data-code="${esc(c.code)}">${esc(c.text)}</span>`,
            )
            .join("");
      return (
        `<article class="candidate" data-student="${esc(e.studentId)}">` +
        `<h3>#${e.rank} ${esc(e.studentId)} — ${e.total}</h3>` +
        bars +
        chipsHtml +
        `<button class="pin" data-student="${esc(e.pinAction.studentId)}" ` +
        `data-mission="${esc(e.pinAction.missionId)}">Pin</button>` +
        `</article>`
      );
    })
    .join("");
  return `<section class="inspector" data-mission="${esc(vm.missionId)}">${cards}</section>`;
}

export function renderDiff(diff: PlanDiff): string {
  if (diff.noChange) {
    return `<p class="no-change">${esc(diff.message ?? "")}</p>`;
  }
  const rows = Object.entries(diff.parts)
    .map(
      ([name, p]) =>
        `<tr class="${p.changed ? "changed" : ""}">` +
        `<td>${esc(name)}</td><td>${p.before}</td><td>${p.after}</td></tr>`,
    )
    .join("");
  const moved = diff.reassigned
    .map(
      (r) =>
        `<li>${esc(r.studentId)}: ${esc(r.before ?? "—")} → ${esc(r.after ?? "—")}</li>`,
    )
    .join("");
  return (
    `<section class="whatif-diff">` +
    `<p>Objective: ${diff.objectiveTotal.before} → ${diff.objectiveTotal.after}</p>` +
    `<table><tbody>${rows}</tbody></table>` +
    `<ul class="moves">${moved}</ul>` +
    `</section>`
  );
}
