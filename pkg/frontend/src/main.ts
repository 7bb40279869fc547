/** Page wiring: connection bar, student tab, lecturer tab.
 *
 * API base URL and tokens are entered once and kept in session storage;
 * there is no login flow. Refreshing is always safe: the page re-fetches
 * whatever the server has.
 */

import { ApiClient, ApiError } from './api.js';
import { renderQuiz, renderReview } from './dom.js';
import { QuizViewModel } from './quizView.js';
import { ReviewViewModel } from './reviewView.js';
import type { SubmitResponse } from './types.js';

const $ = (id: string): HTMLElement => {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node;
};

function remembered(key: string, fallback = ''): string {
  return sessionStorage.getItem(key) ?? fallback;
}

function remember(key: string, value: string): void {
  sessionStorage.setItem(key, value);
}

function connection(): { base: string; token: string } {
  const base = ($('api-base') as HTMLInputElement).value.trim();
  const token = ($('token') as HTMLInputElement).value.trim();
  remember('automcq.base', base);
  remember('automcq.token', token);
  return { base, token };
}

function showError(message: string): void {
  const banner = $('error-banner');
  banner.textContent = message;
  banner.hidden = message === '';
}

// --- student tab -------------------------------------------------------------

let quizVm: QuizViewModel | null = null;

function redrawQuiz(): void {
  const host = $('quiz-host');
  host.replaceChildren();
  if (!quizVm) return;
  host.appendChild(
    renderQuiz(
      quizVm,
      (questionIndex, choiceIndex) => {
        quizVm?.select(questionIndex, choiceIndex);
        redrawQuiz();
      },
      () => void submitQuiz(),
    ),
  );
}

async function loadQuiz(): Promise<void> {
  showError('');
  const { base, token } = connection();
  const quizId = ($('quiz-id') as HTMLInputElement).value.trim();
  const client = new ApiClient(base, token);
  try {
    const view = await client.getQuiz(quizId);
    quizVm = new QuizViewModel(view);
    redrawQuiz();
  } catch (error) {
    quizVm = null;
    redrawQuiz();
    if (error instanceof ApiError && error.status === 404) {
      showError('Quiz not found. Check the quiz id.');
    } else if (error instanceof ApiError && error.status === 401) {
      showError('Token rejected. Enter a valid student token.');
    } else {
      showError(`Could not load quiz: ${String(error)}`);
    }
  }
}

async function submitQuiz(): Promise<void> {
  if (!quizVm || !quizVm.beginSubmit()) return; // double clicks stop here
  redrawQuiz();
  const { base, token } = connection();
  const studentRef = ($('student-ref') as HTMLInputElement).value.trim();
  const client = new ApiClient(base, token);
  try {
    const response = await client.submitAnswers(
      quizVm.quizId,
      quizVm.toAnswerSheet(studentRef),
    );
    quizVm.applyReport(response);
  } catch (error) {
    if (error instanceof ApiError && error.status === 409) {
      const details = error.details as { report?: SubmitResponse } | null;
      if (details?.report) {
        quizVm.applyAlreadySubmitted(details.report);
        showError('Already submitted; showing your existing result.');
      }
    } else {
      quizVm.submitFailed();
      showError(`Submission failed: ${String(error)}`);
    }
  }
  redrawQuiz();
}

// --- lecturer tab ------------------------------------------------------------

const reviewVm = new ReviewViewModel();

function redrawReview(): void {
  const host = $('review-host');
  host.replaceChildren();
  host.appendChild(renderReview(reviewVm, (flagId) => void resolveFlag(flagId)));
}

async function loadFlags(): Promise<void> {
  showError('');
  const { base, token } = connection();
  const client = new ApiClient(base, token);
  try {
    reviewVm.load(await client.listFlags());
    redrawReview();
  } catch (error) {
    if (error instanceof ApiError && error.status === 403) {
      showError('Access denied: the review dashboard needs a lecturer token.');
    } else {
      showError(`Could not load flags: ${String(error)}`);
    }
  }
}

async function resolveFlag(flagId: string): Promise<void> {
  if (!reviewVm.canResolve(flagId)) return;
  const { base, token } = connection();
  const client = new ApiClient(base, token);
  const draft = reviewVm.draft(flagId);
  try {
    const resolved = await client.resolveFlag(flagId, draft.status!, draft.note);
    reviewVm.applyResolution(resolved);
  } catch (error) {
    if (error instanceof ApiError && error.status === 409) {
      await loadFlags(); // someone else resolved it first; refresh
      return;
    }
    showError(`Could not resolve flag: ${String(error)}`);
  }
  redrawReview();
}

// --- boot ----------------------------------------------------------------------

function switchTab(tab: 'student' | 'lecturer'): void {
  $('student-tab').hidden = tab !== 'student';
  $('lecturer-tab').hidden = tab !== 'lecturer';
}

export function boot(): void {
  ($('api-base') as HTMLInputElement).value = remembered(
    'automcq.base',
    'http://127.0.0.1:8080',
  );
  ($('token') as HTMLInputElement).value = remembered('automcq.token');
  $('load-quiz').addEventListener('click', () => void loadQuiz());
  $('load-flags').addEventListener('click', () => {
    switchTab('lecturer');
    void loadFlags();
  });
  $('show-student').addEventListener('click', () => switchTab('student'));
  switchTab('student');
}

boot();
