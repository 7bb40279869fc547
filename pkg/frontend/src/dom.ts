/** DOM rendering: pure functions from view models to elements.
 *
 * Everything shown on screen comes from a view model field, which is what
 * the tests assert against; this layer only arranges it.
 */

import type { QuizViewModel } from './quizView.js';
import type { ReviewViewModel } from './reviewView.js';
import type { FlagListItem } from './types.js';

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

export function renderQuiz(
  vm: QuizViewModel,
  onSelect: (questionIndex: number, choiceIndex: number) => void,
  onSubmit: () => void,
): HTMLElement {
  const root = el('div', 'quiz');

  const disclaimer = el('p', 'disclaimer', vm.disclaimer);
  root.appendChild(disclaimer);

  vm.cards.forEach((card, questionIndex) => {
    const section = el('section', 'question-card');
    const badge = vm.cardBadge(questionIndex);
    const heading = el('h3', undefined, `${questionIndex + 1}. ${card.stem}`);
    if (badge) {
      const badgeSpan = el('span', `badge badge-${badge.replace(' ', '-')}`, badge);
      heading.appendChild(badgeSpan);
    }
    section.appendChild(heading);

    const graded = vm.submissionState.kind === 'graded';
    const revealedIndex = vm.revealedCorrectIndex(questionIndex);

    card.choices.forEach((choiceText, choiceIndex) => {
      const isFlag = vm.isFlagChoice(questionIndex, choiceIndex);
      if (isFlag) {
        // the flag choice reads as a meta-action, not another answer
        section.appendChild(el('hr', 'flag-divider'));
      }
      const label = el('label', isFlag ? 'choice flag-choice' : 'choice');
      const input = document.createElement('input');
      input.type = 'radio';
      input.name = `question-${questionIndex}`;
      input.checked = card.selected === choiceIndex;
      input.disabled = graded || vm.submissionState.kind === 'sending';
      input.addEventListener('change', () => onSelect(questionIndex, choiceIndex));
      label.appendChild(input);
      label.appendChild(
        el('span', undefined, isFlag ? `⚠ ${choiceText}` : choiceText),
      );
      if (graded && revealedIndex === choiceIndex) {
        label.appendChild(el('span', 'correct-marker', ' ✓ correct answer'));
      }
      section.appendChild(label);
    });

    const explanation = vm.revealedExplanation(questionIndex);
    if (explanation) {
      section.appendChild(el('p', 'explanation', explanation));
    }
    root.appendChild(section);
  });

  if (vm.submissionState.kind === 'graded') {
    root.appendChild(el('p', 'score', `Score: ${vm.scoreLabel()}`));
  } else {
    const submit = el('button', 'submit', 'Submit answers');
    submit.disabled = !vm.canSubmit;
    submit.addEventListener('click', onSubmit);
    root.appendChild(submit);
  }
  return root;
}

export function renderReview(
  vm: ReviewViewModel,
  onResolve: (flagId: string) => void,
): HTMLElement {
  const root = el('div', 'review');

  const pendingPane = el('div', 'pending-pane');
  pendingPane.appendChild(el('h2', undefined, 'Pending flags'));
  if (vm.isEmpty) {
    pendingPane.appendChild(el('p', 'empty-state', vm.emptyStateMessage()));
  }
  for (const item of vm.pending) {
    pendingPane.appendChild(renderFlagCard(vm, item, onResolve));
  }
  root.appendChild(pendingPane);

  const historyPane = el('div', 'history-pane');
  historyPane.appendChild(el('h2', undefined, 'History'));
  for (const item of vm.history) {
    const row = el('div', 'history-item');
    row.appendChild(el('strong', undefined, item.flag.status));
    row.appendChild(
      el('span', undefined, ` ${item.question?.stem ?? item.flag.question_id}`),
    );
    if (item.flag.resolution_note) {
      row.appendChild(el('em', undefined, ` — ${item.flag.resolution_note}`));
    }
    historyPane.appendChild(row);
  }
  root.appendChild(historyPane);
  return root;
}

function renderFlagCard(
  vm: ReviewViewModel,
  item: FlagListItem,
  onResolve: (flagId: string) => void,
): HTMLElement {
  const flagId = item.flag.flag_id;
  const card = el('section', 'flag-card');
  card.appendChild(el('h3', undefined, item.question?.stem ?? item.flag.question_id));
  card.appendChild(
    el('p', 'flag-meta', `flagged by ${item.flag.student_ref} at ${item.flag.created_at}`),
  );

  const options = el('ul', 'options');
  for (const text of vm.markedOptions(item)) {
    options.appendChild(el('li', undefined, text));
  }
  card.appendChild(options);

  const code = el('pre', 'student-code');
  code.textContent = vm.codeExcerpt(item);
  card.appendChild(code);

  const controls = el('div', 'resolution-controls');
  const note = document.createElement('input');
  note.placeholder = 'resolution note';
  note.addEventListener('input', () => vm.setDraftNote(flagId, note.value));
  controls.appendChild(note);

  const choices: Array<['resolved_valid' | 'resolved_invalid', string]> = [
    ['resolved_valid', 'Question is fine'],
    ['resolved_invalid', 'Question invalid (void it)'],
  ];
  for (const [status, text] of choices) {
    const button = el('button', `resolve-${status}`, text);
    button.addEventListener('click', () => {
      vm.setDraftStatus(flagId, status);
      onResolve(flagId);
    });
    controls.appendChild(button);
  }
  card.appendChild(controls);
  return card;
}
