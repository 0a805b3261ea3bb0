/**
 * Survey form: one respondent answers the two feeling questions plus the
 * usage question for each system in the survey.
 *
 * The wording comes from the server definition and is rendered exactly as
 * provided (self-report and manager-proxy variants differ). A system the
 * respondent leaves blank is simply skipped — no response is recorded for it.
 */

import { ApiClient, ApiError } from "./api.js";
import type { Answer, Submission, Survey } from "./types.js";

export type SubmitResult =
  | { ok: true; accepted: number }
  | { ok: false; status: number; message: string };

export interface SurveyFormController {
  element: HTMLElement;
  /** Gather the currently selected answers; blank systems are omitted. */
  collect(): Submission;
  /** POST the collected answers; resolves with the outcome either way. */
  submit(): Promise<SubmitResult>;
}

const QUESTION_KEYS = ["functional", "dysfunctional", "usage"] as const;

function radioGroup(
  doc: Document,
  name: string,
  prompt: string,
  options: Record<string, string>,
): HTMLFieldSetElement {
  const fieldset = doc.createElement("fieldset");
  fieldset.className = "question";
  const legend = doc.createElement("legend");
  legend.textContent = prompt;
  fieldset.append(legend);
  for (const [code, label] of Object.entries(options)) {
    const wrapper = doc.createElement("label");
    const input = doc.createElement("input");
    input.type = "radio";
    input.name = name;
    input.value = code;
    const text = doc.createElement("span");
    text.textContent = label;
    wrapper.append(input, text);
    fieldset.append(wrapper);
  }
  return fieldset;
}

function selectedValue(root: HTMLElement, name: string): string | null {
  const checked = root.querySelector<HTMLInputElement>(
    `input[name="${name}"]:checked`,
  );
  return checked ? checked.value : null;
}

export function renderSurveyForm(
  client: ApiClient,
  survey: Survey,
  doc: Document = document,
): SurveyFormController {
  const root = doc.createElement("section");
  root.className = "survey-form";

  const heading = doc.createElement("h1");
  heading.textContent = survey.title;
  root.append(heading);

  const respondentLabel = doc.createElement("label");
  respondentLabel.textContent = "Your identifier";
  const respondentInput = doc.createElement("input");
  respondentInput.type = "text";
  respondentInput.name = "respondent_id";
  respondentLabel.append(respondentInput);
  root.append(respondentLabel);

  // Managers answering on behalf of a team state the headcount once; it
  // weights every answer in the submission.
  let headcountInput: HTMLInputElement | null = null;
  if (survey.wording === "proxy") {
    const headcountLabel = doc.createElement("label");
    headcountLabel.textContent = "Team size you are answering for";
    headcountInput = doc.createElement("input");
    headcountInput.type = "number";
    headcountInput.name = "headcount";
    headcountInput.min = "1";
    headcountInput.value = "1";
    headcountLabel.append(headcountInput);
    root.append(headcountLabel);
  }

  for (const system of survey.systems) {
    const block = doc.createElement("fieldset");
    block.className = "system";
    block.dataset.system = system.system_id;
    const legend = doc.createElement("legend");
    legend.textContent = system.display_name;
    block.append(legend);
    for (const key of QUESTION_KEYS) {
      const question = survey.questions[key];
      block.append(
        radioGroup(
          doc,
          `${system.system_id}:${key}`,
          question.text.replace("{system}", system.display_name),
          question.options,
        ),
      );
    }
    root.append(block);
  }

  const status = doc.createElement("p");
  status.className = "status";
  const button = doc.createElement("button");
  button.type = "button";
  button.textContent = "Submit answers";
  root.append(button, status);

  function collect(): Submission {
    const answers: Answer[] = [];
    for (const system of survey.systems) {
      const functional = selectedValue(root, `${system.system_id}:functional`);
      const dysfunctional = selectedValue(root, `${system.system_id}:dysfunctional`);
      if (!functional || !dysfunctional) continue; // skipped system
      const usage = selectedValue(root, `${system.system_id}:usage`);
      const answer: Answer = {
        system_id: system.system_id,
        functional,
        dysfunctional,
        usage: usage ?? undefined,
      };
      if (survey.wording === "proxy") {
        answer.role = "proxy";
        answer.weight = Number(headcountInput!.value || "1");
      }
      answers.push(answer);
    }
    return { respondent_id: respondentInput.value.trim(), answers };
  }

  async function submit(): Promise<SubmitResult> {
    const submission = collect();
    if (!submission.respondent_id) {
      status.textContent = "Enter your identifier before submitting.";
      return { ok: false, status: 0, message: "missing respondent id" };
    }
    if (submission.answers.length === 0) {
      status.textContent = "Answer both feeling questions for at least one system.";
      return { ok: false, status: 0, message: "no answers selected" };
    }
    try {
      const result = await client.submitResponses(survey.survey_id, submission);
      status.textContent = `Thank you — ${result.accepted} answer(s) recorded.`;
      return { ok: true, accepted: result.accepted };
    } catch (error) {
      if (error instanceof ApiError) {
        status.textContent = error.detail;
        return { ok: false, status: error.status, message: error.detail };
      }
      throw error;
    }
  }

  button.addEventListener("click", () => {
    void submit();
  });

  return { element: root, collect, submit };
}
