/**
 * Draft persistence in browser local storage, keyed by rater id so two
 * raters sharing a machine never clobber each other. Corrupt drafts
 * are dropped silently; a fresh session is better than a crash.
 */

import type { RubricDefinition } from './rubric.js'
import { RatingSession, SessionDraft } from './session.js'

export interface KeyValueStore {
  getItem(key: string): string | null
  setItem(key: string, value: string): void
  removeItem(key: string): void
}

export function draftKey(raterId: string): string {
  return `rater-ui/draft/${raterId}`
}

export function saveDraft(store: KeyValueStore, session: RatingSession): void {
  store.setItem(draftKey(session.raterId), JSON.stringify(session.toDraft()))
}

export function loadDraft(
  store: KeyValueStore,
  raterId: string,
  rubric: RubricDefinition,
  dialogueIds: readonly string[],
): RatingSession | null {
  const raw = store.getItem(draftKey(raterId))
  if (raw === null) return null
  try {
    const draft = JSON.parse(raw) as SessionDraft
    if (draft.raterId !== raterId) return null
    return RatingSession.fromDraft(draft, rubric, dialogueIds)
  } catch {
    return null
  }
}

export function clearDraft(store: KeyValueStore, raterId: string): void {
  store.removeItem(draftKey(raterId))
}
