/**
 * Corpus loading. The workbench reads the manifest.json the toolkit's
 * `parse` command writes, then each structured dialogue file it names.
 * A failed dialogue fetch becomes an inline error entry; the session
 * continues with whatever loaded.
 */

export interface ManifestEntry {
  id: string
  file: string
  turns: number
  words?: number
}

export interface DialogueTurn {
  label: string
  speaker: string
  text: string
}

export interface LoadedDialogue {
  id: string
  turns: DialogueTurn[]
  error?: string
}

export interface CorpusView {
  dialogues: LoadedDialogue[]
}

export type FetchJson = (url: string) => Promise<unknown>

/** Default fetcher for the browser; tests inject their own. */
export const httpFetchJson: FetchJson = async (url) => {
  const response = await fetch(url)
  if (!response.ok) {
    throw new Error(`${response.status} ${response.statusText} for ${url}`)
  }
  return response.json()
}

function baseDir(url: string): string {
  const cut = url.lastIndexOf('/')
  return cut < 0 ? '' : url.slice(0, cut + 1)
}

function asTurns(raw: unknown): DialogueTurn[] {
  if (typeof raw !== 'object' || raw === null || !Array.isArray((raw as { turns?: unknown }).turns)) {
    throw new Error('dialogue file has no turns array')
  }
  return (raw as { turns: unknown[] }).turns.map((t, i) => {
    const turn = t as Partial<DialogueTurn>
    if (typeof turn.text !== 'string') throw new Error(`turn ${i} has no text`)
    return {
      label: typeof turn.label === 'string' ? turn.label : String(turn.speaker ?? '?'),
      speaker: typeof turn.speaker === 'string' ? turn.speaker : 'other',
      text: turn.text,
    }
  })
}

export async function loadCorpus(manifestUrl: string, fetchJson: FetchJson): Promise<CorpusView> {
  const manifest = (await fetchJson(manifestUrl)) as { dialogues?: unknown }
  if (!manifest || !Array.isArray(manifest.dialogues)) {
    throw new Error(`manifest at ${manifestUrl} has no dialogues list`)
  }
  const dir = baseDir(manifestUrl)
  const dialogues: LoadedDialogue[] = []
  for (const raw of manifest.dialogues) {
    const entry = raw as Partial<ManifestEntry>
    if (typeof entry.id !== 'string' || typeof entry.file !== 'string') {
      dialogues.push({ id: String(entry.id ?? '?'), turns: [], error: 'malformed manifest entry' })
      continue
    }
    try {
      dialogues.push({ id: entry.id, turns: asTurns(await fetchJson(dir + entry.file)) })
    } catch (err) {
      dialogues.push({ id: entry.id, turns: [], error: String(err) })
    }
  }
  return { dialogues }
}
