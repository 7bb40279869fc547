/** Wire types for the AutoMCQ HTTP API. */

/** Mirror of the server-side flag encoding in answer arrays. */
export const FLAG_ANSWER = -1;

export const FLAG_OPTION_TEXT = "This question doesn't seem right";

export interface StudentQuestionView {
  question_id: string;
  stem: string;
  /** Option texts with the flag choice appended last. */
  choices: string[];
}

export interface StudentQuizView {
  quiz_id: string;
  disclaimer: string;
  created_at: string;
  questions: StudentQuestionView[];
}

export type QuestionOutcome =
  | 'correct'
  | 'incorrect'
  | 'flagged_pending'
  | 'voided';

export interface GradeReportBody {
  per_question: QuestionOutcome[];
  numerator: number;
  denominator: number;
  /** null when every question was flagged or voided. */
  score: number | null;
}

export interface FeedbackEntry {
  question_id: string;
  outcome: QuestionOutcome;
  /** Present only for answered (correct/incorrect) questions. */
  correct_index?: number;
  explanation?: string;
}

export interface SubmitResponse {
  quiz_id: string;
  student_ref: string;
  submitted_at: string;
  report: GradeReportBody;
  feedback: FeedbackEntry[];
}

export interface AnswerSheetBody {
  student_ref: string;
  answers: number[];
}

export type FlagStatus = 'pending' | 'resolved_valid' | 'resolved_invalid';

export interface FlagRecordBody {
  flag_id: string;
  quiz_id: string;
  question_id: string;
  student_ref: string;
  status: FlagStatus;
  resolution_note: string | null;
  created_at: string;
  resolved_at: string | null;
}

export interface LecturerQuestion {
  question_id: string;
  stem: string;
  options: string[];
  correct_index: number;
  explanation: string | null;
  topic: string | null;
}

export interface FlagListItem {
  flag: FlagRecordBody;
  question: LecturerQuestion | null;
  student_code: string;
}

export interface GenerationRequestBody {
  num_questions: number;
  assignment_text: string;
  topics: string[];
  language: string;
  student_code: string;
  student_ref: string;
  provided_code: string | null;
}

export interface ApiErrorBody {
  code: string;
  message: string;
  details: unknown;
}
