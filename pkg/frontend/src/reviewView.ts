/** View model for the lecturer flag-review dashboard.
 *
 * Pending flags carry the full question (correct option marked) and the
 * student's code. Resolving moves an item to the history pane and disables
 * its controls; the server's 409 settles races between stale dashboards.
 */

import type { FlagListItem, FlagRecordBody, FlagStatus } from './types.js';

export type ResolutionChoice = Exclude<FlagStatus, 'pending'>;

export interface ResolutionDraft {
  status: ResolutionChoice | null;
  note: string;
}

export class ReviewViewModel {
  pending: FlagListItem[] = [];
  history: FlagListItem[] = [];
  private drafts = new Map<string, ResolutionDraft>();

  load(items: FlagListItem[]): void {
    this.pending = items.filter((item) => item.flag.status === 'pending');
    this.history = items.filter((item) => item.flag.status !== 'pending');
    for (const item of this.pending) {
      if (!this.drafts.has(item.flag.flag_id)) {
        this.drafts.set(item.flag.flag_id, { status: null, note: '' });
      }
    }
  }

  get isEmpty(): boolean {
    return this.pending.length === 0;
  }

  emptyStateMessage(): string {
    return 'No pending flags. Nothing needs review right now.';
  }

  draft(flagId: string): ResolutionDraft {
    const draft = this.drafts.get(flagId);
    if (!draft) throw new Error(`unknown flag ${flagId}`);
    return draft;
  }

  setDraftStatus(flagId: string, status: ResolutionChoice): void {
    this.draft(flagId).status = status;
  }

  setDraftNote(flagId: string, note: string): void {
    this.draft(flagId).note = note;
  }

  /** Resolve controls are live only while the flag is still pending. */
  canResolve(flagId: string): boolean {
    const item = this.pending.find((p) => p.flag.flag_id === flagId);
    return item !== undefined && this.draft(flagId).status !== null;
  }

  /** Apply the server's resolution: the item leaves pending for history. */
  applyResolution(resolved: FlagRecordBody): void {
    const index = this.pending.findIndex(
      (item) => item.flag.flag_id === resolved.flag_id,
    );
    if (index === -1) return;
    const [item] = this.pending.splice(index, 1);
    if (item) {
      this.history.unshift({ ...item, flag: resolved });
    }
    this.drafts.delete(resolved.flag_id);
  }

  /** Option texts with the correct one marked for the lecturer. */
  markedOptions(item: FlagListItem): string[] {
    if (!item.question) return [];
    return item.question.options.map((text, index) =>
      index === item.question!.correct_index ? `${text} (correct)` : text,
    );
  }

  codeExcerpt(item: FlagListItem, maxLines = 12): string {
    const lines = item.student_code.split('\n');
    if (lines.length <= maxLines) return item.student_code;
    return lines.slice(0, maxLines).join('\n') + '\n…';
  }
}
