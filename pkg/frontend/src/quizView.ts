/** View model for the student quiz-taking screen.
 *
 * Holds only what the student view of the API returned, so the pre-submit
 * screen cannot leak correct answers: they were never sent. All display
 * strings live here; the DOM layer just prints them.
 */

import type {
  AnswerSheetBody,
  FeedbackEntry,
  StudentQuizView,
  SubmitResponse,
} from './types.js';
import { FLAG_ANSWER, FLAG_OPTION_TEXT } from './types.js';

export type SubmissionState =
  | { kind: 'unsent' }
  | { kind: 'sending' }
  | { kind: 'graded'; response: SubmitResponse };

export interface QuestionCard {
  questionId: string;
  stem: string;
  choices: string[];
  flagChoiceIndex: number;
  selected: number | null;
}

export class QuizViewModel {
  readonly quizId: string;
  readonly disclaimer: string;
  readonly cards: QuestionCard[];
  private state: SubmissionState = { kind: 'unsent' };

  constructor(view: StudentQuizView) {
    this.quizId = view.quiz_id;
    this.disclaimer = view.disclaimer;
    this.cards = view.questions.map((question) => ({
      questionId: question.question_id,
      stem: question.stem,
      choices: [...question.choices],
      flagChoiceIndex: question.choices.length - 1,
      selected: null,
    }));
  }

  get submissionState(): SubmissionState {
    return this.state;
  }

  card(index: number): QuestionCard {
    const card = this.cards[index];
    if (!card) throw new Error(`no question at index ${index}`);
    return card;
  }

  isFlagChoice(questionIndex: number, choiceIndex: number): boolean {
    return choiceIndex === this.card(questionIndex).flagChoiceIndex;
  }

  /** Exactly one selectable choice per question: selecting replaces. */
  select(questionIndex: number, choiceIndex: number): void {
    if (this.state.kind !== 'unsent') return;
    const card = this.card(questionIndex);
    if (choiceIndex < 0 || choiceIndex >= card.choices.length) {
      throw new Error(`choice ${choiceIndex} out of range`);
    }
    card.selected = choiceIndex;
  }

  /** Submit stays disabled until every question has a selection. */
  get canSubmit(): boolean {
    return this.state.kind === 'unsent' && this.cards.every((c) => c.selected !== null);
  }

  /**
   * Claim the single submission slot. Returns true exactly once, so a
   * double-clicked submit button still issues one POST.
   */
  beginSubmit(): boolean {
    if (!this.canSubmit) return false;
    this.state = { kind: 'sending' };
    return true;
  }

  /** The wire sheet: flag selections become the -1 sentinel. */
  toAnswerSheet(studentRef: string): AnswerSheetBody {
    return {
      student_ref: studentRef,
      answers: this.cards.map((card) => {
        if (card.selected === null) throw new Error('unanswered question');
        return card.selected === card.flagChoiceIndex ? FLAG_ANSWER : card.selected;
      }),
    };
  }

  applyReport(response: SubmitResponse): void {
    this.state = { kind: 'graded', response };
  }

  /** A 409 means this student already submitted; show the prior report. */
  applyAlreadySubmitted(prior: SubmitResponse): void {
    this.state = { kind: 'graded', response: prior };
  }

  submitFailed(): void {
    if (this.state.kind === 'sending') this.state = { kind: 'unsent' };
  }

  private feedbackFor(questionIndex: number): FeedbackEntry | null {
    if (this.state.kind !== 'graded') return null;
    const questionId = this.card(questionIndex).questionId;
    return (
      this.state.response.feedback.find((f) => f.question_id === questionId) ?? null
    );
  }

  /** "2/2"-style score, or a sentence when the score is undefined. */
  scoreLabel(): string {
    if (this.state.kind !== 'graded') return '';
    const report = this.state.response.report;
    if (report.score === null) {
      return 'No scored questions (all flagged or voided)';
    }
    return `${report.numerator}/${report.denominator}`;
  }

  /** Badge text for a graded card; null before grading. */
  cardBadge(questionIndex: number): string | null {
    const entry = this.feedbackFor(questionIndex);
    if (!entry) return null;
    switch (entry.outcome) {
      case 'correct':
        return 'correct';
      case 'incorrect':
        return 'incorrect';
      case 'flagged_pending':
        return 'pending review';
      case 'voided':
        return 'voided';
    }
  }

  /** Correct choice index, revealed only for answered questions. */
  revealedCorrectIndex(questionIndex: number): number | null {
    const entry = this.feedbackFor(questionIndex);
    return entry?.correct_index ?? null;
  }

  revealedExplanation(questionIndex: number): string | null {
    const entry = this.feedbackFor(questionIndex);
    return entry?.explanation ?? null;
  }

  flagChoiceLabel(): string {
    return FLAG_OPTION_TEXT;
  }
}
