/**
 * Workbench UI. No framework: the state lives in a RatingSession, and
 * every interaction re-renders the affected panel from it. All rating
 * logic sits in the imported modules; this file only does DOM.
 */

import { httpFetchJson, loadCorpus, LoadedDialogue } from './corpus.js'
import { exportRatings } from './csv.js'
import { RubricDefinition, validateRubric } from './rubric.js'
import { RatingSession } from './session.js'
import { shuffledOrder } from './shuffle.js'
import { clearDraft, loadDraft, saveDraft } from './storage.js'

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  attrs: Record<string, string> = {},
  ...children: (Node | string)[]
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag)
  for (const [key, value] of Object.entries(attrs)) node.setAttribute(key, value)
  node.append(...children)
  return node
}

function byId<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id)
  if (!node) throw new Error(`missing #${id}`)
  return node as T
}

interface AppState {
  rubric: RubricDefinition
  dialogues: LoadedDialogue[]
  order: string[]
  session: RatingSession
  current: number
}

let state: AppState | null = null

function setStatus(text: string, isError = false): void {
  const node = byId<HTMLElement>('status')
  node.textContent = text
  node.className = isError ? 'status error' : 'status'
}

function download(filename: string, text: string): void {
  const blob = new Blob([text], { type: 'text/csv;charset=utf-8' })
  const anchor = el('a', { href: URL.createObjectURL(blob), download: filename })
  document.body.append(anchor)
  anchor.click()
  anchor.remove()
}

function persist(): void {
  if (state) saveDraft(window.localStorage, state.session)
}

function renderNav(): void {
  if (!state) return
  const nav = byId<HTMLElement>('nav-list')
  nav.replaceChildren()
  state.order.forEach((id, index) => {
    const dialogue = state!.dialogues.find((d) => d.id === id)
    const done = state!.session.isComplete(id)
    const button = el(
      'button',
      { class: ['nav-item', index === state!.current ? 'active' : '', done ? 'done' : ''].join(' ').trim() },
      `${done ? '✓ ' : ''}${id}${dialogue?.error ? ' ⚠' : ''}`,
    )
    button.addEventListener('click', () => {
      state!.current = index
      renderAll()
    })
    nav.append(el('li', {}, button))
  })
  byId<HTMLElement>('progress').textContent =
    `${state.session.completedCount()} / ${state.order.length} complete`
  const exportButton = byId<HTMLButtonElement>('export')
  exportButton.disabled = !state.session.hasAnyCell()
}

function renderDialogue(): void {
  if (!state) return
  const pane = byId<HTMLElement>('dialogue')
  pane.replaceChildren()
  const id = state.order[state.current]
  if (id === undefined) {
    pane.append(el('p', { class: 'empty' }, 'No dialogues loaded.'))
    return
  }
  const dialogue = state.dialogues.find((d) => d.id === id)
  pane.append(el('h2', {}, id))
  if (!dialogue) return
  if (dialogue.error) {
    pane.append(el('p', { class: 'error' }, `Could not load this dialogue: ${dialogue.error}`))
    return
  }
  for (const turn of dialogue.turns) {
    pane.append(
      el(
        'div',
        { class: `turn ${turn.speaker}` },
        el('span', { class: 'label' }, turn.label + ':'),
        ' ' + turn.text,
      ),
    )
  }
}

function renderRubric(): void {
  if (!state) return
  const panel = byId<HTMLElement>('rubric')
  panel.replaceChildren()
  const dialogueId = state.order[state.current]
  if (dialogueId === undefined) return
  const { session, rubric } = state

  for (const category of rubric.categories) {
    const cell = session.getCell(dialogueId, category.key)
    const disabled = session.isDisabled(category.key)
    const block = el('section', { class: 'category' }, el('h3', {}, category.title))

    for (const band of category.bands) {
      block.append(el('p', { class: 'band' }, el('strong', {}, band.points + ': '), band.text))
    }

    const controls = el('div', { class: 'controls' })
    for (let score = rubric.scale.min; score <= rubric.scale.max; score++) {
      const active = cell?.kind === 'score' && cell.score === score
      const button = el('button', { class: active ? 'score active' : 'score' }, String(score))
      button.disabled = disabled
      button.addEventListener('click', () => {
        session.setScore(dialogueId, category.key, score)
        persist()
        renderAll()
      })
      controls.append(button)
    }
    if (rubric.skippable.includes(category.key)) {
      const active = cell?.kind === 'skipped'
      const skipButton = el('button', { class: active ? 'skip active' : 'skip' }, 'skip')
      skipButton.disabled = disabled
      skipButton.addEventListener('click', () => {
        session.skip(dialogueId, category.key)
        persist()
        renderAll()
      })
      controls.append(skipButton)
    }
    if (disabled) {
      controls.append(el('span', { class: 'note' }, 'skipped (non-clinician rater)'))
    }
    block.append(controls)
    panel.append(block)
  }

  const comment = el('textarea', {
    id: 'comment',
    rows: '3',
    placeholder: 'Optional comment on this dialogue',
  })
  comment.value = session.getComment(dialogueId)
  comment.addEventListener('input', () => {
    session.setComment(dialogueId, comment.value)
    persist()
  })
  panel.append(el('h3', {}, 'Comment'), comment)
}

function renderAll(): void {
  renderNav()
  renderDialogue()
  renderRubric()
}

async function start(): Promise<void> {
  const raterId = byId<HTMLInputElement>('rater-id').value.trim()
  const manifestUrl = byId<HTMLInputElement>('manifest-url').value.trim()
  const clinician = byId<HTMLInputElement>('clinician').checked
  const shuffle = byId<HTMLInputElement>('shuffle').checked
  if (!raterId) {
    setStatus('Enter a rater id first.', true)
    return
  }
  setStatus('Loading…')
  try {
    const rubric = validateRubric(await httpFetchJson('rubric.json'))
    const corpus = await loadCorpus(manifestUrl, httpFetchJson)
    const ids = corpus.dialogues.map((d) => d.id)
    const order = shuffle ? shuffledOrder(ids, raterId) : ids
    const session =
      loadDraft(window.localStorage, raterId, rubric, ids) ??
      new RatingSession(rubric, ids, raterId, clinician)
    state = { rubric, dialogues: corpus.dialogues, order, session, current: 0 }
    const failed = corpus.dialogues.filter((d) => d.error).length
    if (ids.length === 0) {
      setStatus('The manifest lists no dialogues; nothing to rate.', true)
    } else {
      setStatus(
        `Loaded ${ids.length} dialogue(s)` + (failed ? `, ${failed} failed to fetch` : ''),
      )
    }
    byId<HTMLElement>('workbench').hidden = ids.length === 0
    renderAll()
  } catch (err) {
    setStatus(String(err), true)
  }
}

function wire(): void {
  byId<HTMLButtonElement>('load').addEventListener('click', () => void start())
  byId<HTMLButtonElement>('export').addEventListener('click', () => {
    if (!state) return
    try {
      const bundle = exportRatings(state.session)
      download(bundle.filename, bundle.csv)
      download(bundle.commentsFilename, bundle.commentsCsv)
      setStatus(`Exported ${bundle.filename}` + (state.session.partial ? ' (partial)' : ''))
    } catch (err) {
      setStatus(String(err), true)
    }
  })
  byId<HTMLButtonElement>('reset').addEventListener('click', () => {
    if (!state) return
    clearDraft(window.localStorage, state.session.raterId)
    state.session = new RatingSession(
      state.rubric,
      state.dialogues.map((d) => d.id),
      state.session.raterId,
      state.session.clinician,
    )
    renderAll()
    setStatus('Draft cleared.')
  })
}

document.addEventListener('DOMContentLoaded', wire)
