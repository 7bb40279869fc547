/** Thin typed client over the AutoMCQ HTTP API.
 *
 * The UI holds no authoritative state: every mutation goes through these
 * calls and every screen can be rebuilt from what they return.
 */

import type {
  AnswerSheetBody,
  ApiErrorBody,
  FlagListItem,
  FlagRecordBody,
  FlagStatus,
  GenerationRequestBody,
  StudentQuizView,
  SubmitResponse,
} from './types.js';

export class ApiError extends Error {
  readonly status: number;
  readonly code: string;
  readonly details: unknown;

  constructor(status: number, body: ApiErrorBody) {
    super(body.message);
    this.status = status;
    this.code = body.code;
    this.details = body.details;
  }
}

type FetchLike = typeof fetch;

export class ApiClient {
  private readonly baseUrl: string;
  private readonly token: string;
  private readonly fetchImpl: FetchLike;

  constructor(baseUrl: string, token: string, fetchImpl: FetchLike = fetch) {
    this.baseUrl = baseUrl.replace(/\/+$/, '');
    this.token = token;
    this.fetchImpl = fetchImpl;
  }

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const response = await this.fetchImpl(`${this.baseUrl}${path}`, {
      method,
      headers: {
        Authorization: `Bearer ${this.token}`,
        ...(body === undefined ? {} : { 'Content-Type': 'application/json' }),
      },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    if (!response.ok) {
      let errorBody: ApiErrorBody;
      try {
        errorBody = (await response.json()) as ApiErrorBody;
      } catch {
        errorBody = { code: 'UNKNOWN', message: response.statusText, details: null };
      }
      throw new ApiError(response.status, errorBody);
    }
    return (await response.json()) as T;
  }

  createQuiz(request: GenerationRequestBody): Promise<StudentQuizView> {
    return this.request('POST', '/api/quizzes', request);
  }

  getQuiz(quizId: string): Promise<StudentQuizView> {
    return this.request('GET', `/api/quizzes/${encodeURIComponent(quizId)}`);
  }

  submitAnswers(quizId: string, sheet: AnswerSheetBody): Promise<SubmitResponse> {
    return this.request('POST', `/api/quizzes/${encodeURIComponent(quizId)}/answers`, sheet);
  }

  getStudentReport(quizId: string, studentRef: string): Promise<SubmitResponse> {
    return this.request(
      'GET',
      `/api/quizzes/${encodeURIComponent(quizId)}/answers/${encodeURIComponent(studentRef)}`,
    );
  }

  listFlags(status?: FlagStatus): Promise<FlagListItem[]> {
    const query = status ? `?status=${status}` : '';
    return this.request('GET', `/api/review/flags${query}`);
  }

  resolveFlag(
    flagId: string,
    status: Exclude<FlagStatus, 'pending'>,
    note: string,
  ): Promise<FlagRecordBody> {
    return this.request('POST', `/api/review/flags/${encodeURIComponent(flagId)}/resolution`, {
      status,
      note,
    });
  }
}
