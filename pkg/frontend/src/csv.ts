/**
 * CSV export. The ratings file must be byte-compatible with the
 * evaluation suite's `ratings ingest` command: header
 * `rater_id,dialogue_id,category,score`, integer scores 0-5, and an
 * empty score field for an explicitly skipped cell. Comments go to a
 * separate sidecar file so the ratings CSV stays strictly tabular.
 */

import type { RatingSession } from './session.js'

export interface ExportBundle {
  filename: string
  csv: string
  commentsFilename: string
  commentsCsv: string
}

export const RATINGS_HEADER = 'rater_id,dialogue_id,category,score'

function escapeCell(value: string): string {
  if (/[",\n\r]/.test(value)) {
    return '"' + value.replace(/"/g, '""') + '"'
  }
  return value
}

export function ratingsCsv(session: RatingSession): string {
  const lines = [RATINGS_HEADER]
  for (const { dialogueId, category, score } of session.enteredCells()) {
    const cell = score === null ? '' : String(score)
    lines.push(
      [escapeCell(session.raterId), escapeCell(dialogueId), category, cell].join(','),
    )
  }
  return lines.join('\n') + '\n'
}

export function commentsCsv(session: RatingSession): string {
  const lines = ['rater_id,dialogue_id,comment']
  for (const { dialogueId, comment } of session.commentEntries()) {
    lines.push(
      [escapeCell(session.raterId), escapeCell(dialogueId), escapeCell(comment)].join(','),
    )
  }
  return lines.join('\n') + '\n'
}

/** Builds both files; partial sessions are flagged in the filename. */
export function exportRatings(session: RatingSession): ExportBundle {
  if (!session.hasAnyCell()) {
    throw new Error('nothing to export: no cell has been scored or skipped')
  }
  const suffix = session.partial ? '_partial' : ''
  return {
    filename: `ratings_${session.raterId}${suffix}.csv`,
    csv: ratingsCsv(session),
    commentsFilename: `comments_${session.raterId}${suffix}.csv`,
    commentsCsv: commentsCsv(session),
  }
}
