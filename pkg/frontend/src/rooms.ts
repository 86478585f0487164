// Rooms search: a validated date/guests form rendering availability cards
// exactly as the API reports them.

import { ApiClient, ApiError, RoomListing } from "./api.js";

export class RoomsSearch {
  private form!: HTMLFormElement;
  private checkInInput!: HTMLInputElement;
  private checkOutInput!: HTMLInputElement;
  private guestsInput!: HTMLInputElement;
  private errorMessage!: HTMLElement;
  private results!: HTMLElement;

  constructor(
    private readonly root: HTMLElement,
    private readonly api: ApiClient,
  ) {
    this.render();
  }

  private render(): void {
    this.root.innerHTML = "";
    this.form = document.createElement("form");
    this.form.className = "rooms-form";

    this.checkInInput = this.dateInput("check_in");
    this.checkOutInput = this.dateInput("check_out");
    this.guestsInput = document.createElement("input");
    this.guestsInput.type = "number";
    this.guestsInput.name = "guests";
    this.guestsInput.min = "1";
    this.guestsInput.value = "2";

    const submit = document.createElement("button");
    submit.type = "submit";
    submit.className = "rooms-submit";
    submit.textContent = "Search";

    this.errorMessage = document.createElement("p");
    this.errorMessage.className = "rooms-error";
    this.errorMessage.hidden = true;

    this.results = document.createElement("div");
    this.results.className = "rooms-results";

    this.form.append(
      this.labelled("Check-in", this.checkInInput),
      this.labelled("Check-out", this.checkOutInput),
      this.labelled("Guests", this.guestsInput),
      submit,
    );
    this.form.addEventListener("submit", (event) => {
      event.preventDefault();
      void this.search();
    });
    this.root.append(this.form, this.errorMessage, this.results);
  }

  private dateInput(name: string): HTMLInputElement {
    const input = document.createElement("input");
    input.type = "date";
    input.name = name;
    return input;
  }

  private labelled(text: string, input: HTMLElement): HTMLLabelElement {
    const label = document.createElement("label");
    label.append(`${text} `, input);
    return label;
  }

  /** Client-side validation message, or null when the form may be submitted. */
  validationError(): string | null {
    const checkIn = this.checkInInput.value;
    const checkOut = this.checkOutInput.value;
    const guests = Number(this.guestsInput.value);
    if (!checkIn || !checkOut) {
      return "Please pick both dates.";
    }
    if (checkOut <= checkIn) {
      return "Check-out must be after check-in.";
    }
    if (!Number.isInteger(guests) || guests < 1) {
      return "Guests must be at least 1.";
    }
    return null;
  }

  async search(): Promise<void> {
    const problem = this.validationError();
    if (problem) {
      this.showError(problem);
      return;
    }
    this.hideError();
    try {
      const rooms = await this.api.searchRooms(
        this.checkInInput.value,
        this.checkOutInput.value,
        Number(this.guestsInput.value),
      );
      this.renderResults(rooms);
    } catch (error) {
      this.showError(
        error instanceof ApiError ? error.detail : "Room search is unavailable right now.",
      );
    }
  }

  private renderResults(rooms: RoomListing[]): void {
    this.results.innerHTML = "";
    if (rooms.length === 0) {
      const empty = document.createElement("p");
      empty.className = "rooms-empty";
      empty.textContent = "No rooms available for those dates.";
      this.results.append(empty);
      return;
    }
    for (const room of rooms) {
      const card = document.createElement("article");
      card.className = "room-card";
      const name = document.createElement("h3");
      name.className = "room-name";
      name.textContent = room.name;
      const facts = document.createElement("ul");
      for (const [cls, text] of [
        ["room-capacity", `Sleeps ${room.capacity}`],
        ["room-rate", `$${room.nightly_rate} per night`],
        ["room-units", `${room.available_units} available`],
      ] as const) {
        const item = document.createElement("li");
        item.className = cls;
        item.textContent = text;
        facts.append(item);
      }
      card.append(name, facts);
      this.results.append(card);
    }
  }

  private showError(message: string): void {
    this.errorMessage.textContent = message;
    this.errorMessage.hidden = false;
  }

  private hideError(): void {
    this.errorMessage.hidden = true;
  }
}
